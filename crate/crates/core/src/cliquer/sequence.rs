//! Cliques from divisibility sequences.
//!
//! If `k - j` divides `k` then `x^n - x^k + 1` and `x^n - x^j + 1` dyadically
//! resolve for every `n > k`. A strictly increasing sequence in which every
//! difference divides both of its terms is therefore a clique in `T(n)` for
//! all `n` above its largest member. Such sequences grow by one term at a time:
//! with `L` the lcm of the terms, `{L} + {L / k_i * (k_i + 1)}` is again one.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::CliqueError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilitySequence {
    members: Vec<BigUint>,
}

/// First pair `(i, j)` (indices, `i < j`) whose difference fails to divide
/// both terms.
fn violation(members: &[BigUint]) -> Option<(usize, usize)> {
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate().skip(i + 1) {
            if b <= a {
                return Some((i, j));
            }
            let d = b - a;
            if !b.is_multiple_of(&d) {
                return Some((i, j));
            }
        }
    }
    None
}

impl DivisibilitySequence {
    /// Validates strict increase, positivity and the divisibility condition.
    pub fn new(members: Vec<BigUint>) -> Result<Self, CliqueError> {
        if members.is_empty() {
            return Err(CliqueError::EmptySequence);
        }
        if members[0].is_zero() {
            return Err(CliqueError::ZeroMember);
        }
        if let Some((i, j)) = violation(&members) {
            return Err(CliqueError::SequenceInvariant {
                i: members[i].clone(),
                j: members[j].clone(),
            });
        }
        Ok(DivisibilitySequence { members })
    }

    pub fn from_u64s(members: &[u64]) -> Result<Self, CliqueError> {
        Self::new(members.iter().map(|&m| BigUint::from(m)).collect())
    }

    /// The one-term sequence `{1}`.
    pub fn seed() -> Self {
        DivisibilitySequence {
            members: vec![BigUint::one()],
        }
    }

    pub fn members(&self) -> &[BigUint] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max(&self) -> &BigUint {
        self.members.last().expect("sequences are nonempty")
    }

    pub fn lcm(&self) -> BigUint {
        self.members.iter().fold(BigUint::one(), |acc, m| acc.lcm(m))
    }

    /// Members as machine words, if they all fit.
    pub fn to_usizes(&self) -> Option<Vec<usize>> {
        self.members
            .iter()
            .map(|m| usize::try_from(m).ok())
            .collect()
    }
}

impl fmt::Display for DivisibilitySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|m| m.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// One growth step: `{L} + {L / k_i * (k_i + 1)}` with `L = lcm(k_i)`.
pub fn grow_divisibility_sequence(seq: &DivisibilitySequence) -> DivisibilitySequence {
    let l = seq.lcm();
    let mut next = Vec::with_capacity(seq.len() + 1);
    next.push(l.clone());
    next.extend(seq.members.iter().map(|k| &l / k * (k + 1u32)));
    next.sort();
    debug_assert!(violation(&next).is_none());
    DivisibilitySequence { members: next }
}

/// Iterates growth from `{1}`: `{1}, {1, 2}, {2, 3, 4}, ...`.
pub fn divisibility_sequences() -> impl Iterator<Item = DivisibilitySequence> {
    std::iter::successors(Some(DivisibilitySequence::seed()), |s| {
        Some(grow_divisibility_sequence(s))
    })
}

/// Certifies that `members` is a clique in `T(n)` from divisibility alone:
/// every pair satisfies `(k - j) | k`. No resultant is computed.
pub fn sequence_is_clique(members: &[BigUint], n: &BigUint) -> Result<bool, CliqueError> {
    let seq = DivisibilitySequence::new(members.to_vec())?;
    if n <= seq.max() {
        return Err(CliqueError::SequenceTooLarge {
            n: n.clone(),
            max: seq.max().clone(),
        });
    }
    // the constructor already checked every pair
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[u64]) -> DivisibilitySequence {
        DivisibilitySequence::from_u64s(v).unwrap()
    }

    #[test]
    fn first_growth_steps() {
        let got: Vec<DivisibilitySequence> = divisibility_sequences().take(5).collect();
        assert_eq!(got[0], seq(&[1]));
        assert_eq!(got[1], seq(&[1, 2]));
        assert_eq!(got[2], seq(&[2, 3, 4]));
        assert_eq!(got[3], seq(&[12, 15, 16, 18]));
        assert_eq!(got[4], seq(&[720, 760, 765, 768, 780]));
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(matches!(
            DivisibilitySequence::from_u64s(&[1, 3]),
            Err(CliqueError::SequenceInvariant { .. })
        ));
        assert!(DivisibilitySequence::from_u64s(&[2, 2]).is_err());
        assert!(DivisibilitySequence::from_u64s(&[3, 2]).is_err());
        assert!(DivisibilitySequence::from_u64s(&[0, 1]).is_err());
        assert!(matches!(DivisibilitySequence::new(vec![]), Err(CliqueError::EmptySequence)));
    }

    #[test]
    fn clique_certificate_needs_room() {
        let m: Vec<BigUint> = [12u64, 15, 16, 18].iter().map(|&v| v.into()).collect();
        assert!(sequence_is_clique(&m, &BigUint::from(19u32)).unwrap());
        assert!(matches!(
            sequence_is_clique(&m, &BigUint::from(18u32)),
            Err(CliqueError::SequenceTooLarge { .. })
        ));
        let bad: Vec<BigUint> = vec![1u32.into(), 3u32.into()];
        assert!(sequence_is_clique(&bad, &BigUint::from(10u32)).is_err());
    }

    #[test]
    fn growth_preserves_the_invariant() {
        for s in divisibility_sequences().take(8) {
            assert!(violation(s.members()).is_none());
            let next = grow_divisibility_sequence(&s);
            assert_eq!(next.len(), s.len() + 1);
            assert_eq!(next.members()[0], s.lcm());
        }
    }
}
