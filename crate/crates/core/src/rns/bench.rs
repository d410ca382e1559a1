//! Roundtrip timing of the residue system against plain big-integer
//! arithmetic. Correctness is asserted on every sample before any timing is
//! reported.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigUint, RandBigInt};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{residue_op, ModulusSystem, ResidueOp};
use crate::par::Execution;

/// Timings in nanoseconds, totals over all samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchReport {
    pub values: usize,
    pub bit_size: u64,
    pub moduli: usize,
    pub capacity_bits: u64,
    pub seed: u64,
    pub reduce_ns: u128,
    pub naive_reduce_ns: u128,
    pub mul_ns: u128,
    pub naive_mul_ns: u128,
    pub reconstruct_ns: u128,
    pub roundtrip_exact: bool,
}

/// `key=value` lines, one per field, in a fixed order. Products are compared
/// modulo the capacity.
impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "values={}", self.values)?;
        writeln!(f, "bit_size={}", self.bit_size)?;
        writeln!(f, "moduli={}", self.moduli)?;
        writeln!(f, "capacity_bits={}", self.capacity_bits)?;
        writeln!(f, "seed={}", self.seed)?;
        writeln!(f, "reduce_ns={}", self.reduce_ns)?;
        writeln!(f, "naive_reduce_ns={}", self.naive_reduce_ns)?;
        writeln!(f, "mul_ns={}", self.mul_ns)?;
        writeln!(f, "naive_mul_ns={}", self.naive_mul_ns)?;
        writeln!(f, "reconstruct_ns={}", self.reconstruct_ns)?;
        writeln!(f, "roundtrip_exact={}", self.roundtrip_exact)?;
        writeln!(f, "products=mod_capacity")
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Samples `num_values` pairs below the capacity (and below `2^bit_size`),
/// checks reduction, reconstruction and multiplication exactly, then times
/// each stage against plain big-integer arithmetic.
pub fn bench_roundtrip(system: &ModulusSystem, num_values: usize, bit_size: u64, seed: u64, exec: Execution) -> BenchReport {
    let cap = system.capacity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = if bit_size >= cap.bits() {
        cap.clone()
    } else {
        BigUint::from(1u32) << bit_size
    };
    let xs: Vec<BigUint> = (0..num_values).map(|_| rng.gen_biguint_below(&bound)).collect();
    let ys: Vec<BigUint> = (0..num_values).map(|_| rng.gen_biguint_below(&bound)).collect();

    let (us, reduce) = timed(|| xs.iter().map(|x| system.reduce_uint(x, exec)).collect::<Vec<_>>());
    let (naive, naive_reduce) = timed(|| xs.iter().map(|x| system.reduce_naive(x)).collect::<Vec<_>>());
    let vs: Vec<_> = ys.iter().map(|y| system.reduce_uint(y, exec)).collect();
    let (products, mul) = timed(|| {
        us.iter()
            .zip(&vs)
            .map(|(u, v)| residue_op(u, v, ResidueOp::Mul).expect("same system"))
            .collect::<Vec<_>>()
    });
    let (naive_products, naive_mul) = timed(|| {
        xs.iter().zip(&ys).map(|(x, y)| (x * y) % cap).collect::<Vec<_>>()
    });
    let (back, reconstruct) = timed(|| us.iter().map(|u| u.reconstruct()).collect::<Vec<_>>());

    let exact = us.iter().zip(&naive).all(|(u, n)| u.residues() == &n[..])
        && back == xs
        && products.iter().zip(&naive_products).all(|(p, q)| p.reconstruct() == *q);
    assert!(exact, "residue arithmetic disagrees with big-integer arithmetic");

    BenchReport {
        values: num_values,
        bit_size,
        moduli: system.len(),
        capacity_bits: cap.bits(),
        seed,
        reduce_ns: reduce.as_nanos(),
        naive_reduce_ns: naive_reduce.as_nanos(),
        mul_ns: mul.as_nanos(),
        naive_mul_ns: naive_mul.as_nanos(),
        reconstruct_ns: reconstruct.as_nanos(),
        roundtrip_exact: exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliquer::Clique;
    use crate::rns::build_system;

    fn keys(report: &BenchReport) -> Vec<String> {
        report
            .to_string()
            .lines()
            .map(|l| l.split('=').next().unwrap().to_string())
            .collect()
    }

    #[test]
    fn schema_is_stable() {
        let s = build_system(&Clique::new(10, vec![2, 4, 5, 6, 8]).unwrap(), 8).unwrap();
        let empty = bench_roundtrip(&s, 0, 64, 1, Execution::Sequential);
        assert_eq!(empty.values, 0);
        let full = bench_roundtrip(&s, 200, 300, 2, Execution::Parallel);
        assert!(full.roundtrip_exact);
        assert_eq!(keys(&empty), keys(&full));
        assert!(full.to_string().ends_with("products=mod_capacity\n"));
    }
}
