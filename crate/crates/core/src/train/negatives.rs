use rand::Rng;

use crate::kg::{EntityId, Triple};
use crate::{Error, Result};

/// Local closed-world corruption: each positive yields `k` triples with
/// either the head or the tail (chosen with probability ½) replaced by a
/// uniformly drawn, different entity.
pub fn sample_negatives<R: Rng>(batch: &[Triple], k: usize, num_entities: usize, rng: &mut R) -> Result<Vec<Triple>> {
    if num_entities < 2 {
        return Err(Error::Config(format!("cannot corrupt triples over {num_entities} entities")));
    }
    if k == 0 {
        return Err(Error::Config("need at least one negative per positive".into()));
    }
    let mut out = Vec::with_capacity(batch.len() * k);
    for pos in batch {
        for _ in 0..k {
            let corrupt_head = rng.gen_bool(0.5);
            let original = if corrupt_head { pos.head } else { pos.tail };
            let mut e = rng.gen_range(0..num_entities - 1);
            if e >= original.0 {
                e += 1;
            }
            let mut neg = *pos;
            if corrupt_head {
                neg.head = EntityId(e);
            } else {
                neg.tail = EntityId(e);
            }
            out.push(neg);
        }
    }
    Ok(out)
}
