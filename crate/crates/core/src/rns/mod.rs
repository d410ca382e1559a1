//! A residue number system over a clique of trinomial moduli
//! `m_i = 2^(cn) - 2^(c k_i) + 1`.
//!
//! Reduction folds the high part with `2^(cn) = 2^(c k) - 1 (mod m)`, so it
//! needs only shifts, adds and one final subtraction. Reconstruction is
//! Garner's mixed-radix CRT driven by a table of pairwise inverses, taken from
//! scalable inverse polynomials evaluated at `2^c` where those are valid.

mod bench;
mod record;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cliquer::{verify_clique, Clique, CliqueError};
use crate::cofactor::scalable_inverse_pair;
use crate::par::{self, Execution};

pub use bench::{bench_roundtrip, BenchReport};
pub use record::{check_moduli_record, parse_moduli_record, write_moduli_record, ModuliRecord};

#[derive(Debug, Error)]
pub enum RnsError {
    #[error("clique does not verify: some pair fails to dyadically resolve")]
    UnverifiedClique,
    #[error("scale c must be at least 1")]
    ZeroScale,
    #[error("moduli for k = {0} and k = {1} share the factor {2}")]
    NotCoprime(usize, usize, BigUint),
    #[error("inverse of modulus k = {from} modulo k = {to} failed verification")]
    InverseFailure { from: usize, to: usize },
    #[error("negative input")]
    NegativeInput,
    #[error("residue vectors belong to different systems")]
    MismatchedSystems,
    #[error("residue vector has {got} entries, system has {want} moduli")]
    WrongLength { got: usize, want: usize },
    #[error("residue {index} is not below its modulus")]
    ResidueOutOfRange { index: usize },
    #[error("malformed moduli file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Clique(#[from] CliqueError),
}

/// Where an inverse-table entry came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InverseSource {
    /// a scalable inverse polynomial evaluated at `2^c`
    Scalable,
    /// the integer extended Euclidean algorithm, used below the scale where
    /// the polynomial gives an integral inverse
    Euclid,
}

impl InverseSource {
    pub fn as_str(self) -> &'static str {
        match self {
            InverseSource::Scalable => "scalable",
            InverseSource::Euclid => "euclid",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseEntry {
    pub value: BigUint,
    pub source: InverseSource,
}

/// One trinomial modulus with its folding parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Modulus {
    value: BigUint,
    /// `c n`
    top: u64,
    /// `c k`
    mid: u64,
}

impl Modulus {
    fn new(n: usize, k: usize, c: u32) -> Self {
        let (top, mid) = (c as u64 * n as u64, c as u64 * k as u64);
        let one = BigUint::one();
        Modulus {
            value: (&one << top) - (&one << mid) + one,
            top,
            mid,
        }
    }

    /// `x mod m` by folding `x = hi 2^(cn) + lo` into `hi (2^(ck) - 1) + lo`.
    fn fold(&self, mut x: BigUint) -> BigUint {
        while x.bits() > self.top {
            let hi = &x >> self.top;
            x -= &hi << self.top;
            x += &hi << self.mid;
            x -= hi;
        }
        if x >= self.value {
            x -= &self.value;
        }
        x
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulusSystem {
    n: usize,
    c: u32,
    clique: Clique,
    moduli: Vec<Modulus>,
    capacity: BigUint,
    /// `inverses[i][j]` is `m_i^-1 mod m_j`; the diagonal is `None`
    inverses: Vec<Vec<Option<InverseEntry>>>,
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let (a, m) = (BigInt::from(a.clone()), BigInt::from(m.clone()));
    let e = a.extended_gcd(&m);
    e.gcd.is_one().then(|| e.x.mod_floor(&m).to_biguint().expect("nonnegative"))
}

/// Builds the system for a verified clique at scale `c`.
pub fn build_system(clique: &Clique, c: u32) -> Result<ModulusSystem, RnsError> {
    if c == 0 {
        return Err(RnsError::ZeroScale);
    }
    let n = clique.n();
    let ks = clique.members();
    if ks.is_empty() || !verify_clique(n, ks)? {
        return Err(RnsError::UnverifiedClique);
    }
    let moduli: Vec<Modulus> = ks.iter().map(|&k| Modulus::new(n, k, c)).collect();
    for i in 0..ks.len() {
        for j in i + 1..ks.len() {
            let g = moduli[i].value.gcd(&moduli[j].value);
            if !g.is_one() {
                return Err(RnsError::NotCoprime(ks[i], ks[j], g));
            }
        }
    }

    let size = ks.len();
    let mut inverses = vec![vec![None; size]; size];
    for i in 0..size {
        for j in i + 1..size {
            // a inverts m_i modulo m_j, b inverts m_j modulo m_i
            let pair = scalable_inverse_pair(n, ks[i], ks[j]).ok();
            let forward = pair.as_ref().map(|p| &p.a);
            let backward = pair.as_ref().map(|p| &p.b);
            inverses[i][j] = Some(inverse_entry(&moduli[i], &moduli[j], forward, c, ks[i], ks[j])?);
            inverses[j][i] = Some(inverse_entry(&moduli[j], &moduli[i], backward, c, ks[j], ks[i])?);
        }
    }
    let capacity = moduli.iter().fold(BigUint::one(), |acc, m| acc * &m.value);
    Ok(ModulusSystem {
        n,
        c,
        clique: clique.clone(),
        moduli,
        capacity,
        inverses,
    })
}

fn inverse_entry(
    from: &Modulus,
    to: &Modulus,
    poly: Option<&crate::bigpoly::RatPoly>,
    c: u32,
    kf: usize,
    kt: usize,
) -> Result<InverseEntry, RnsError> {
    let is_inverse = |v: &BigUint| (v * &from.value) % &to.value == BigUint::one();
    if let Some(v) = poly.and_then(|p| crate::cofactor::eval_mod(p, c, &to.value)) {
        if is_inverse(&v) {
            return Ok(InverseEntry {
                value: v,
                source: InverseSource::Scalable,
            });
        }
    }
    let v = mod_inverse(&from.value, &to.value).ok_or(RnsError::InverseFailure { from: kf, to: kt })?;
    if !is_inverse(&v) {
        return Err(RnsError::InverseFailure { from: kf, to: kt });
    }
    Ok(InverseEntry {
        value: v,
        source: InverseSource::Euclid,
    })
}

impl ModulusSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> u32 {
        self.c
    }

    pub fn clique(&self) -> &Clique {
        &self.clique
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    pub fn moduli(&self) -> impl Iterator<Item = &BigUint> + '_ {
        self.moduli.iter().map(|m| &m.value)
    }

    pub fn modulus(&self, i: usize) -> &BigUint {
        &self.moduli[i].value
    }

    /// Product of the moduli.
    pub fn capacity(&self) -> &BigUint {
        &self.capacity
    }

    /// `m_i^-1 mod m_j` with its provenance; `None` when `i == j`.
    pub fn inverse(&self, i: usize, j: usize) -> Option<&InverseEntry> {
        self.inverses[i][j].as_ref()
    }

    fn same_system(&self, other: &ModulusSystem) -> bool {
        self.n == other.n && self.c == other.c && self.clique == other.clique
    }

    /// Residues of a nonnegative integer.
    pub fn reduce(&self, x: &BigInt) -> Result<ResidueVector<'_>, RnsError> {
        if x.sign() == Sign::Minus {
            return Err(RnsError::NegativeInput);
        }
        Ok(self.reduce_uint(x.magnitude(), Execution::Sequential))
    }

    pub fn reduce_uint(&self, x: &BigUint, exec: Execution) -> ResidueVector<'_> {
        let residues = par::map_slice(exec, &self.moduli, |m| m.fold(x.clone()));
        ResidueVector {
            system: self,
            residues,
        }
    }

    /// `x mod m_i` by plain big-integer division, for comparison.
    pub fn reduce_naive(&self, x: &BigUint) -> Vec<BigUint> {
        self.moduli.iter().map(|m| x % &m.value).collect()
    }

    /// Wraps raw residues, checking each is below its modulus.
    pub fn residues(&self, residues: Vec<BigUint>) -> Result<ResidueVector<'_>, RnsError> {
        if residues.len() != self.len() {
            return Err(RnsError::WrongLength {
                got: residues.len(),
                want: self.len(),
            });
        }
        if let Some(index) = residues.iter().zip(&self.moduli).position(|(r, m)| r >= &m.value) {
            return Err(RnsError::ResidueOutOfRange { index });
        }
        Ok(ResidueVector {
            system: self,
            residues,
        })
    }

    /// Garner reconstruction: the unique `x < capacity` with the given residues.
    pub fn reconstruct(&self, v: &ResidueVector<'_>) -> BigUint {
        let size = self.len();
        let mut digits: Vec<BigUint> = Vec::with_capacity(size);
        for i in 0..size {
            let m = &self.moduli[i].value;
            let mut d = v.residues[i].clone();
            for (j, dj) in digits.iter().enumerate() {
                let inv = &self.inverses[j][i].as_ref().expect("off-diagonal").value;
                let dj = dj % m;
                d = if d >= dj { d - dj } else { d + m - dj };
                d = self.moduli[i].fold(d * inv);
            }
            digits.push(d);
        }
        let mut x = BigUint::zero();
        for (d, m) in digits.iter().zip(&self.moduli).rev() {
            x = x * &m.value + d;
        }
        x
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueOp {
    Add,
    Sub,
    Mul,
}

/// Residues of one integer in a [`ModulusSystem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueVector<'a> {
    system: &'a ModulusSystem,
    residues: Vec<BigUint>,
}

impl<'a> ResidueVector<'a> {
    pub fn system(&self) -> &'a ModulusSystem {
        self.system
    }

    pub fn residues(&self) -> &[BigUint] {
        &self.residues
    }

    pub fn reconstruct(&self) -> BigUint {
        self.system.reconstruct(self)
    }
}

/// Componentwise `u op v`.
pub fn residue_op<'a>(u: &ResidueVector<'a>, v: &ResidueVector<'a>, op: ResidueOp) -> Result<ResidueVector<'a>, RnsError> {
    if !u.system.same_system(v.system) {
        return Err(RnsError::MismatchedSystems);
    }
    let residues = u
        .residues
        .iter()
        .zip(&v.residues)
        .zip(&u.system.moduli)
        .map(|((a, b), m)| match op {
            ResidueOp::Add => {
                let s = a + b;
                if s >= m.value {
                    s - &m.value
                } else {
                    s
                }
            }
            ResidueOp::Sub => {
                if a >= b {
                    a - b
                } else {
                    a + &m.value - b
                }
            }
            ResidueOp::Mul => m.fold(a * b),
        })
        .collect();
    Ok(ResidueVector {
        system: u.system,
        residues,
    })
}
