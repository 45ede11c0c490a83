//! Seeded random instance generation for both expression families.

use crate::expr::{DiCoExpr, MspExpr};
use crate::instance::{GraphForm, Instance, ItemId, ProblemKind, SizeMap};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenClass {
    Dico,
    Msp,
}

/// Build a random instance: a uniform binary split tree over leaves
/// v1..vn with uniform operations, and uniform sizes in [1, max_size].
/// The same seed always yields the same instance.
pub fn gen_instance(
    class: GenClass,
    n: usize,
    capacity: u64,
    max_size: u64,
    seed: u64,
    kind: ProblemKind,
) -> Instance {
    assert!(n >= 1, "need at least one item");
    assert!(max_size >= 1 && max_size <= capacity, "need c >= max_size >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graph = match class {
        GenClass::Dico => GraphForm::DiCo(gen_dico(&mut rng, 1, n as ItemId + 1)),
        GenClass::Msp => GraphForm::Msp(gen_msp(&mut rng, 1, n as ItemId + 1)),
    };
    let sizes: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_size)).collect();
    Instance::new(kind, capacity, SizeMap::new(sizes).unwrap(), graph)
        .expect("generated instances are valid")
}

fn gen_dico(rng: &mut ChaCha8Rng, lo: ItemId, hi: ItemId) -> DiCoExpr {
    if hi - lo == 1 {
        return DiCoExpr::Leaf(lo);
    }
    let op = rng.gen_range(0..3u8);
    let split = rng.gen_range(lo + 1..hi);
    let left = Box::new(gen_dico(rng, lo, split));
    let right = Box::new(gen_dico(rng, split, hi));
    match op {
        0 => DiCoExpr::Union(left, right),
        1 => DiCoExpr::Order(left, right),
        _ => DiCoExpr::Series(left, right),
    }
}

fn gen_msp(rng: &mut ChaCha8Rng, lo: ItemId, hi: ItemId) -> MspExpr {
    if hi - lo == 1 {
        return MspExpr::Leaf(lo);
    }
    let op = rng.gen_range(0..2u8);
    let split = rng.gen_range(lo + 1..hi);
    let left = Box::new(gen_msp(rng, lo, split));
    let right = Box::new(gen_msp(rng, split, hi));
    match op {
        0 => MspExpr::Parallel(left, right),
        _ => MspExpr::Series(left, right),
    }
}
