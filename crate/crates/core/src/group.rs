//! Finitely generated abelian grading groups `Z^r x Z/m1 x ... x Z/mt`.
//!
//! The public API is multiplicative (`multiply`, `inverse`, identity) while
//! elements are stored as additive integer vectors: the first `free_rank`
//! coordinates are free, the remaining ones are torsion coordinates kept
//! reduced into `[0, m_i)`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("torsion modulus {0} is smaller than 2")]
    BadModulus(i64),
    #[error("element has {found} coordinates, group expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate overflow in group arithmetic")]
    Overflow,
}

/// Shape of a grading group: `free_rank` copies of `Z` followed by the
/// cyclic factors `Z/m` listed in `torsion`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

/// A group element in reduced additive coordinates.
///
/// The derived ordering is lexicographic on the reduced coordinate vector and
/// is the canonical order used for every deterministic iteration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl GroupSpec {
    pub fn new(free_rank: usize, torsion: Vec<i64>) -> Result<Self, GroupError> {
        if let Some(&m) = torsion.iter().find(|&&m| m < 2) {
            return Err(GroupError::BadModulus(m));
        }
        Ok(Self { free_rank, torsion })
    }

    /// The free abelian group `Z^rank`.
    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// Re-checks the modulus invariant, for specs built by deserialization.
    pub fn check(&self) -> Result<(), GroupError> {
        match self.torsion.iter().find(|&&m| m < 2) {
            Some(&m) => Err(GroupError::BadModulus(m)),
            None => Ok(()),
        }
    }

    pub fn coordinate_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Builds an element, reducing torsion coordinates.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        self.check_len(coords)?;
        let mut out = coords.to_vec();
        for (c, &m) in out[self.free_rank..].iter_mut().zip(&self.torsion) {
            *c = c.rem_euclid(m);
        }
        Ok(GroupElement(out))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.coordinate_count()])
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(&a.0)?;
        self.check_len(&b.0)?;
        let mut out = Vec::with_capacity(a.0.len());
        for (k, (x, y)) in a.0.iter().zip(&b.0).enumerate() {
            let s = x.checked_add(*y).ok_or(GroupError::Overflow)?;
            out.push(match k.checked_sub(self.free_rank) {
                Some(t) => s.rem_euclid(self.torsion[t]),
                None => s,
            });
        }
        Ok(GroupElement(out))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_len(&a.0)?;
        let mut out = Vec::with_capacity(a.0.len());
        for (k, x) in a.0.iter().enumerate() {
            let n = x.checked_neg().ok_or(GroupError::Overflow)?;
            out.push(match k.checked_sub(self.free_rank) {
                Some(t) => n.rem_euclid(self.torsion[t]),
                None => n,
            });
        }
        Ok(GroupElement(out))
    }

    pub fn is_identity(&self, a: &GroupElement) -> Result<bool, GroupError> {
        self.check_len(&a.0)?;
        Ok(a
            .0
            .iter()
            .enumerate()
            .all(|(k, &x)| match k.checked_sub(self.free_rank) {
                Some(t) => x.rem_euclid(self.torsion[t]) == 0,
                None => x == 0,
            }))
    }

    /// True iff the coordinates have the right length and torsion
    /// coordinates are already reduced.
    pub fn conforms(&self, a: &GroupElement) -> bool {
        a.0.len() == self.coordinate_count()
            && a.0[self.free_rank..]
                .iter()
                .zip(&self.torsion)
                .all(|(&x, &m)| (0..m).contains(&x))
    }

    fn check_len(&self, coords: &[i64]) -> Result<(), GroupError> {
        if coords.len() != self.coordinate_count() {
            return Err(GroupError::DimensionMismatch {
                expected: self.coordinate_count(),
                found: coords.len(),
            });
        }
        Ok(())
    }

    /// Direct product `self x other`. Coordinates of the product are laid out
    /// as `[free(self), free(other), torsion(self), torsion(other)]`.
    pub fn product(&self, other: &GroupSpec) -> GroupSpec {
        let mut torsion = self.torsion.clone();
        torsion.extend_from_slice(&other.torsion);
        GroupSpec {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }

    /// Embeds an element of the left factor into `self.product(other)`.
    pub fn embed_left(&self, other: &GroupSpec, a: &GroupElement) -> GroupElement {
        let mut c = a.0[..self.free_rank].to_vec();
        c.extend(std::iter::repeat_n(0, other.free_rank));
        c.extend_from_slice(&a.0[self.free_rank..]);
        c.extend(std::iter::repeat_n(0, other.torsion.len()));
        GroupElement(c)
    }

    /// Embeds an element of the right factor into `self.product(other)`.
    pub fn embed_right(&self, other: &GroupSpec, b: &GroupElement) -> GroupElement {
        let mut c = vec![0; self.free_rank];
        c.extend_from_slice(&b.0[..other.free_rank]);
        c.extend(std::iter::repeat_n(0, self.torsion.len()));
        c.extend_from_slice(&b.0[other.free_rank..]);
        GroupElement(c)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}
