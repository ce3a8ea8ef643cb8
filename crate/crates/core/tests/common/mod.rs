#![allow(dead_code)]

use evalg::algebra::EvolutionAlgebra;
use evalg::field::{FieldSpec, Scalar};
use evalg::linalg::Matrix;
use rand::Rng;

pub fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

pub fn algebra_from_ints(spec: FieldSpec, n: usize, entries: &[i64]) -> EvolutionAlgebra {
    let entries = entries.iter().map(|&v| Scalar::from_i64(spec, v)).collect();
    EvolutionAlgebra::new(spec, Matrix::new(spec, n, n, entries).unwrap()).unwrap()
}

/// Every `n×n` structure matrix over `F_p`, in base-`p` counting order.
pub fn all_algebras(p: u64, n: usize) -> impl Iterator<Item = EvolutionAlgebra> {
    let spec = fp(p);
    let total = p.pow((n * n) as u32);
    (0..total).map(move |mut code| {
        let entries: Vec<i64> = (0..n * n)
            .map(|_| {
                let d = code % p;
                code /= p;
                d as i64
            })
            .collect();
        algebra_from_ints(spec, n, &entries)
    })
}

/// Regular algebra over `F_p` with uniformly random entries (rejection sampling).
pub fn random_regular_fp(rng: &mut impl Rng, p: u64, n: usize) -> EvolutionAlgebra {
    loop {
        let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(0..p) as i64).collect();
        let a = algebra_from_ints(fp(p), n, &entries);
        if a.is_regular() {
            return a;
        }
    }
}

/// Small integer entries, zero about 40% of the time so that rank-zero pairs
/// and vanishing constants show up often.
pub fn random_int_entries(rng: &mut impl Rng, n: usize) -> Vec<i64> {
    (0..n * n)
        .map(|_| {
            if rng.gen_bool(0.4) {
                0
            } else {
                rng.gen_range(-3..=3)
            }
        })
        .collect()
}

/// Integer entries whose rational structure matrix is regular.
pub fn random_regular_ints(rng: &mut impl Rng, n: usize) -> Vec<i64> {
    loop {
        let entries = random_int_entries(rng, n);
        if algebra_from_ints(FieldSpec::rationals(), n, &entries).is_regular() {
            return entries;
        }
    }
}
