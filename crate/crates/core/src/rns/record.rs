//! Moduli files.
//!
//! ```text
//! MODULI 1
//! n=<n> c=<c> k=<k1,k2,...>
//! modulus k=<k> hex=<lowercase hex>                      one per member
//! inverse from=<ki> to=<kj> source=<scalable|euclid> hex=<hex>   one per ordered pair
//! ```

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use super::{InverseSource, ModulusSystem, RnsError};
use crate::cliquer::{parse_members, verify_clique};
use crate::cofactor::{eval_mod, scalable_inverse_pair};

pub fn write_moduli_record(s: &ModulusSystem) -> String {
    let ks = s.clique().members();
    let list: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
    let mut out = format!("MODULI 1\nn={} c={} k={}\n", s.n(), s.scale(), list.join(","));
    for (k, m) in ks.iter().zip(s.moduli()) {
        let _ = writeln!(out, "modulus k={k} hex={m:x}");
    }
    for i in 0..ks.len() {
        for j in 0..ks.len() {
            if let Some(e) = s.inverse(i, j) {
                let _ = writeln!(
                    out,
                    "inverse from={} to={} source={} hex={:x}",
                    ks[i],
                    ks[j],
                    e.source.as_str(),
                    e.value
                );
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliRecord {
    pub n: usize,
    pub c: u32,
    pub members: Vec<usize>,
    pub moduli: Vec<(usize, BigUint)>,
    pub inverses: Vec<(usize, usize, InverseSource, BigUint)>,
}

fn malformed(m: impl Into<String>) -> RnsError {
    RnsError::Malformed(m.into())
}

fn fields<'a>(line: &'a str, tag: &str, keys: &[&str]) -> Result<Vec<&'a str>, RnsError> {
    let mut it = line.split(' ');
    if !tag.is_empty() && it.next() != Some(tag) {
        return Err(malformed(format!("expected a `{tag}` line, got {line:?}")));
    }
    let vals = keys
        .iter()
        .map(|k| {
            it.next()
                .and_then(|t| t.strip_prefix(k))
                .and_then(|t| t.strip_prefix('='))
                .ok_or_else(|| malformed(format!("expected {k}= in {line:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if it.next().is_some() {
        return Err(malformed(format!("trailing fields in {line:?}")));
    }
    Ok(vals)
}

fn num<T: std::str::FromStr>(s: &str) -> Result<T, RnsError> {
    s.parse().map_err(|_| malformed(format!("bad number {s:?}")))
}

fn hex(s: &str) -> Result<BigUint, RnsError> {
    BigUint::parse_bytes(s.as_bytes(), 16).ok_or_else(|| malformed(format!("bad hex {s:?}")))
}

pub fn parse_moduli_record(text: &str) -> Result<ModuliRecord, RnsError> {
    let mut lines = text.lines();
    if lines.next() != Some("MODULI 1") {
        return Err(malformed("expected header `MODULI 1`"));
    }
    let head = fields(lines.next().ok_or_else(|| malformed("missing n= c= k= line"))?, "", &["n", "c", "k"])?;
    let members = parse_members(head[2]).map_err(|e| malformed(e.to_string()))?;
    let mut rec = ModuliRecord {
        n: num(head[0])?,
        c: num(head[1])?,
        members,
        moduli: Vec::new(),
        inverses: Vec::new(),
    };
    for line in lines.filter(|l| !l.is_empty()) {
        if line.starts_with("modulus ") {
            let f = fields(line, "modulus", &["k", "hex"])?;
            rec.moduli.push((num(f[0])?, hex(f[1])?));
        } else {
            let f = fields(line, "inverse", &["from", "to", "source", "hex"])?;
            let source = match f[2] {
                "scalable" => InverseSource::Scalable,
                "euclid" => InverseSource::Euclid,
                other => return Err(malformed(format!("unknown source {other:?}"))),
            };
            rec.inverses.push((num(f[0])?, num(f[1])?, source, hex(f[3])?));
        }
    }
    Ok(rec)
}

/// Checks a record independently of how it was produced: the clique
/// verifies, each modulus has the trinomial form, moduli are pairwise coprime,
/// every ordered pair carries a correct inverse, and entries marked
/// `scalable` equal the scalable polynomial evaluated at `2^c`.
pub fn check_moduli_record(rec: &ModuliRecord) -> Result<(), RnsError> {
    let (n, c) = (rec.n, rec.c);
    if c == 0 {
        return Err(RnsError::ZeroScale);
    }
    if rec.members.is_empty() || !verify_clique(n, &rec.members)? {
        return Err(RnsError::UnverifiedClique);
    }
    let listed: Vec<usize> = rec.moduli.iter().map(|(k, _)| *k).collect();
    if listed != rec.members {
        return Err(malformed("modulus lines do not match the member list"));
    }
    let one = BigUint::one();
    let expect = |k: usize| (&one << (c as usize * n)) - (&one << (c as usize * k)) + &one;
    for (k, m) in &rec.moduli {
        if *m != expect(*k) {
            return Err(malformed(format!("modulus for k={k} is not 2^(cn) - 2^(ck) + 1")));
        }
    }
    for (a, (ka, ma)) in rec.moduli.iter().enumerate() {
        for (kb, mb) in &rec.moduli[a + 1..] {
            let g = ma.gcd(mb);
            if !g.is_one() {
                return Err(RnsError::NotCoprime(*ka, *kb, g));
            }
        }
    }
    let size = rec.members.len();
    let mut pairs: Vec<(usize, usize)> = rec.inverses.iter().map(|&(a, b, _, _)| (a, b)).collect();
    pairs.sort_unstable();
    pairs.dedup();
    if rec.inverses.len() != size * (size - 1) || pairs.len() != rec.inverses.len() {
        return Err(malformed("inverse table is incomplete"));
    }
    for &(from, to, source, ref v) in &rec.inverses {
        let (Some(i), Some(j)) = (
            rec.members.iter().position(|&k| k == from),
            rec.members.iter().position(|&k| k == to),
        ) else {
            return Err(malformed(format!("inverse names unknown member {from} or {to}")));
        };
        let (mi, mj) = (&rec.moduli[i].1, &rec.moduli[j].1);
        if i == j || v >= mj || (v * mi) % mj != one {
            return Err(RnsError::InverseFailure { from, to });
        }
        if source == InverseSource::Scalable {
            let pair = scalable_inverse_pair(n, from, to).map_err(|_| RnsError::InverseFailure { from, to })?;
            if eval_mod(&pair.a, c, mj).as_ref() != Some(v) {
                return Err(RnsError::InverseFailure { from, to });
            }
        }
    }
    Ok(())
}
