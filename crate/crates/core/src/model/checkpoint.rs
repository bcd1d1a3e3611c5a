//! Binary checkpoint container.
//!
//! Layout (little endian):
//!
//! ```text
//! magic "LANDCKPT" | version u32 | variant u8 | h u32 | d u32
//! | entities u64 | relations u64 | index_ref_len u32 | index_ref utf-8
//! | tensors as f64, row-major, in ModelParams::tensors() order
//! ```

use std::io::{Read, Write};

use super::{Fusion, GatedParams, ModelParams, Variant};
use crate::linalg::Matrix;
use crate::{Error, Result};

pub const CHECKPOINT_MAGIC: &[u8; 8] = b"LANDCKPT";
const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Checkpoint {
    pub model: ModelParams,
    /// Path or name of the entity/relation index dump the rows refer to.
    pub index_ref: String,
}

pub fn write_checkpoint<W: Write>(mut out: W, model: &ModelParams, index_ref: &str) -> Result<()> {
    out.write_all(CHECKPOINT_MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&[model.variant().tag()])?;
    out.write_all(&(model.dim() as u32).to_le_bytes())?;
    out.write_all(&(model.text_dim() as u32).to_le_bytes())?;
    out.write_all(&(model.num_entities() as u64).to_le_bytes())?;
    out.write_all(&(model.num_relations() as u64).to_le_bytes())?;
    out.write_all(&(index_ref.len() as u32).to_le_bytes())?;
    out.write_all(index_ref.as_bytes())?;
    for (_, tensor) in model.tensors() {
        for x in tensor {
            out.write_all(&x.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)
        .map_err(|e| Error::Checkpoint(format!("truncated header: {e}")))?;
    Ok(buf)
}

fn read_matrix<R: Read>(r: &mut R, rows: usize, cols: usize) -> Result<Matrix> {
    let mut data = Vec::with_capacity(rows * cols);
    let mut buf = [0u8; 8];
    for _ in 0..rows * cols {
        r.read_exact(&mut buf)
            .map_err(|e| Error::Checkpoint(format!("truncated tensor data: {e}")))?;
        data.push(f64::from_le_bytes(buf));
    }
    Ok(Matrix::from_vec(rows, cols, data))
}

pub fn read_checkpoint<R: Read>(mut input: R) -> Result<Checkpoint> {
    let r = &mut input;
    if &read_array::<8, _>(r)? != CHECKPOINT_MAGIC {
        return Err(Error::Checkpoint("missing magic header".into()));
    }
    let version = u32::from_le_bytes(read_array(r)?);
    if version != VERSION {
        return Err(Error::Checkpoint(format!("unsupported version {version}")));
    }
    let [tag] = read_array::<1, _>(r)?;
    let variant = Variant::from_tag(tag).ok_or_else(|| Error::Checkpoint(format!("unknown variant tag {tag}")))?;
    let h = u32::from_le_bytes(read_array(r)?) as usize;
    let d = u32::from_le_bytes(read_array(r)?) as usize;
    let n_ent = u64::from_le_bytes(read_array(r)?) as usize;
    let n_rel = u64::from_le_bytes(read_array(r)?) as usize;
    let ref_len = u32::from_le_bytes(read_array(r)?) as usize;
    let mut ref_bytes = vec![0u8; ref_len];
    r.read_exact(&mut ref_bytes)?;
    let index_ref = String::from_utf8(ref_bytes).map_err(|_| Error::Checkpoint("index reference is not UTF-8".into()))?;

    let entity = read_matrix(r, n_ent, h)?;
    let relation = read_matrix(r, n_rel, h)?;
    let fusion = match variant {
        Variant::Unimodal => Fusion::None,
        Variant::GLin => Fusion::Linear(read_matrix(r, h, h + d)?),
        Variant::GGru => {
            let w_ze = read_matrix(r, h, h)?;
            let w_zl = read_matrix(r, h, h + d)?;
            let w_zn = read_matrix(r, 1, h)?.as_slice().to_vec();
            let b = read_matrix(r, 1, h)?.as_slice().to_vec();
            let w_h = read_matrix(r, h, h + d + 1)?;
            Fusion::Gated(GatedParams { w_ze, w_zl, w_zn, b, w_h })
        }
    };
    let model = ModelParams::from_parts(entity, relation, fusion, d)?;
    Ok(Checkpoint { model, index_ref })
}
