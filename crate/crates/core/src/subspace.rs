//! Graded subspaces: one echelon basis per homogeneous sector.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{Sector, ValidatedAlgebra};
use crate::linalg::{unit_vector, zero_vector, EchelonBasis, Scalar, Vector};

/// A subspace `S = sum_s S_s` where each `S_s` lies in one sector `L_g^p`.
///
/// Vectors are in ambient basis coordinates. Empty sectors are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    ambient: usize,
    components: BTreeMap<Sector, EchelonBasis>,
}

impl GradedSubspace {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            components: BTreeMap::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.components.values().map(EchelonBasis::dim).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &BTreeMap<Sector, EchelonBasis> {
        &self.components
    }

    pub fn component(&self, s: &Sector) -> Option<&EchelonBasis> {
        self.components.get(s)
    }

    pub fn component_dim(&self, s: &Sector) -> usize {
        self.components.get(s).map_or(0, EchelonBasis::dim)
    }

    /// All basis vectors, sector by sector in canonical order.
    pub fn basis(&self) -> Vec<(Sector, Vector)> {
        self.components
            .iter()
            .flat_map(|(s, e)| e.rows().iter().map(move |r| (s.clone(), r.clone())))
            .collect()
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.components.values().flat_map(|e| e.rows().iter().cloned()).collect()
    }

    /// Splits `v` into its sector projections.
    pub fn split(alg: &ValidatedAlgebra, v: &[Scalar]) -> Vec<(Sector, Vector)> {
        let mut out = Vec::new();
        for (s, idx) in alg.sector_indices() {
            if idx.iter().all(|&i| v[i].is_zero()) {
                continue;
            }
            let mut p = zero_vector(v.len());
            for &i in idx {
                p[i] = v[i].clone();
            }
            out.push((s.clone(), p));
        }
        out
    }

    /// Adds the sector projections of `v`; returns `true` if the dimension grew.
    /// For homogeneous `v` this adds `v` itself.
    pub fn insert(&mut self, alg: &ValidatedAlgebra, v: &[Scalar]) -> bool {
        let mut grew = false;
        for (s, p) in Self::split(alg, v) {
            grew |= self.insert_in_sector(s, p);
        }
        grew
    }

    /// Adds a vector already known to lie in sector `s`.
    pub(crate) fn insert_in_sector(&mut self, s: Sector, v: Vector) -> bool {
        let ambient = self.ambient;
        self.components
            .entry(s)
            .or_insert_with(|| EchelonBasis::new(ambient))
            .insert(v)
    }

    pub fn insert_unit(&mut self, alg: &ValidatedAlgebra, i: usize) -> bool {
        self.insert_in_sector(alg.sector_of(i), unit_vector(self.ambient, i))
    }

    pub fn extend(&mut self, other: &GradedSubspace) {
        for (s, e) in &other.components {
            for r in e.rows() {
                self.insert_in_sector(s.clone(), r.clone());
            }
        }
    }

    pub fn contains(&self, alg: &ValidatedAlgebra, v: &[Scalar]) -> bool {
        Self::split(alg, v)
            .into_iter()
            .all(|(s, p)| self.components.get(&s).is_some_and(|e| e.contains(&p)))
    }

    pub fn contains_subspace(&self, other: &GradedSubspace) -> bool {
        other.components.iter().all(|(s, e)| match self.components.get(s) {
            Some(mine) => mine.contains_all(e),
            None => e.is_empty(),
        })
    }

    /// Degrees `g` with a nonzero component in some parity.
    pub fn degrees(&self) -> Vec<crate::group::GroupElement> {
        let mut out: Vec<_> = self.components.keys().map(|s| s.degree.clone()).collect();
        out.dedup();
        out
    }

    /// `S ∩ L_g` as a subspace of the same sectors.
    pub fn restricted_to_degree(&self, g: &crate::group::GroupElement) -> GradedSubspace {
        GradedSubspace {
            ambient: self.ambient,
            components: self
                .components
                .iter()
                .filter(|(s, _)| &s.degree == g)
                .map(|(s, e)| (s.clone(), e.clone()))
                .collect(),
        }
    }
}
