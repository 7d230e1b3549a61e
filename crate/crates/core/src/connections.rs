//! Connections on a symmetric support.
//!
//! Two support degrees `g`, `g'` are connected when there is a chain
//! `g_1, ..., g_n` of support elements with `g_1 = g`, every proper partial
//! product `g_1 ... g_k` (k < n) in the support, and the full product equal to
//! `g'` or `g'^-1`. The classes are computed as a closure fixed point; a
//! literal breadth-first chain search is kept alongside as an oracle.
//!
//! Nothing here looks at structure constants, only at the set of degrees.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::algebra::ValidatedAlgebra;
use crate::group::{GroupElement, GroupError, GroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("degree {0} is not in the support")]
    NotInSupport(GroupElement),
    #[error("support is not symmetric: {0} is present but its inverse is not")]
    NotSymmetric(GroupElement),
    #[error("the identity {0} cannot belong to a support")]
    ContainsIdentity(GroupElement),
    #[error("oracle chain length must be at least 1")]
    ZeroDepth,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The support `Σ` as a bare set of group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGraph {
    group: GroupSpec,
    elements: BTreeSet<GroupElement>,
}

/// One equivalence class; `representative` is its smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionClass {
    pub representative: GroupElement,
    pub members: BTreeSet<GroupElement>,
}

impl ConnectionClass {
    pub fn contains(&self, g: &GroupElement) -> bool {
        self.members.contains(g)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

impl SupportGraph {
    /// Elements are reduced into the group; the identity is rejected.
    /// Symmetry is not required here, only by the class computations.
    pub fn new(
        group: GroupSpec,
        elements: impl IntoIterator<Item = GroupElement>,
    ) -> Result<Self, ConnectionError> {
        group.check()?;
        let mut set = BTreeSet::new();
        for e in elements {
            let e = group.element(e.coords())?;
            if group.is_identity(&e)? {
                return Err(ConnectionError::ContainsIdentity(e));
            }
            set.insert(e);
        }
        Ok(Self { group, elements: set })
    }

    pub fn from_coords(group: GroupSpec, coords: &[&[i64]]) -> Result<Self, ConnectionError> {
        let els = coords
            .iter()
            .map(|c| group.element(c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(group, els)
    }

    pub fn of_algebra(alg: &ValidatedAlgebra) -> Self {
        Self {
            group: alg.group().clone(),
            elements: alg.support().sigma,
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &BTreeSet<GroupElement> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.contains(g)
    }

    /// First element (canonical order) whose inverse is missing.
    pub fn asymmetry(&self) -> Option<GroupElement> {
        self.elements
            .iter()
            .find(|g| !self.elements.contains(&self.inv(g)))
            .cloned()
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry().is_none()
    }

    fn check_symmetric(&self) -> Result<(), ConnectionError> {
        match self.asymmetry() {
            Some(g) => Err(ConnectionError::NotSymmetric(g)),
            None => Ok(()),
        }
    }

    fn check_member(&self, g: &GroupElement) -> Result<(), ConnectionError> {
        if self.group.conforms(g) && self.elements.contains(g) {
            Ok(())
        } else {
            Err(ConnectionError::NotInSupport(g.clone()))
        }
    }

    // Members conform to the group and stay bounded in size, so these
    // cannot fail for elements taken from the support.
    fn inv(&self, g: &GroupElement) -> GroupElement {
        self.group.inverse(g).expect("support element conforms")
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, ConnectionError> {
        Ok(self.group.multiply(a, b)?)
    }
}

/// The class of `g`: least set containing `g, g^-1` and closed under
/// (R1) `h -> h^-1` and (R2) `h, s, hs` with `s, hs` in the support adds
/// both `hs` and `s`.
pub fn connection_class(sg: &SupportGraph, g: &GroupElement) -> Result<ConnectionClass, ConnectionError> {
    sg.check_symmetric()?;
    sg.check_member(g)?;
    let mut members = BTreeSet::new();
    let mut queue = VecDeque::new();
    let push = |x: GroupElement, members: &mut BTreeSet<GroupElement>, queue: &mut VecDeque<_>| {
        if members.insert(x.clone()) {
            queue.push_back(x);
        }
    };
    push(g.clone(), &mut members, &mut queue);
    while let Some(h) = queue.pop_front() {
        push(sg.inv(&h), &mut members, &mut queue);
        for s in &sg.elements {
            let hs = sg.mul(&h, s)?;
            if sg.elements.contains(&hs) {
                push(hs, &mut members, &mut queue);
                push(s.clone(), &mut members, &mut queue);
            }
        }
    }
    Ok(ConnectionClass {
        representative: members.first().cloned().expect("class contains its seed"),
        members,
    })
}

/// Partition of the support, ordered by smallest member.
pub fn connection_classes(sg: &SupportGraph) -> Result<Vec<ConnectionClass>, ConnectionError> {
    sg.check_symmetric()?;
    let mut out: Vec<ConnectionClass> = Vec::new();
    let mut seen = BTreeSet::new();
    for g in &sg.elements {
        if seen.contains(g) {
            continue;
        }
        let c = connection_class(sg, g)?;
        seen.extend(c.members.iter().cloned());
        out.push(c);
    }
    Ok(out)
}

/// Completeness bound for [`oracle_connected`]: the partial products range
/// over the support, so one more step than its size always suffices.
pub fn complete_depth(sg: &SupportGraph) -> usize {
    sg.len() + 1
}

/// Breadth-first search for a chain from `g` to `g'` of length at most
/// `max_len`. Chain elements may repeat. Returns a shortest witness.
pub fn oracle_connected(
    sg: &SupportGraph,
    g: &GroupElement,
    target: &GroupElement,
    max_len: usize,
) -> Result<Option<Vec<GroupElement>>, ConnectionError> {
    if max_len == 0 {
        return Err(ConnectionError::ZeroDepth);
    }
    sg.check_member(g)?;
    sg.check_member(target)?;
    let goal = [target.clone(), sg.group.inverse(target)?];
    if goal.contains(g) {
        return Ok(Some(vec![g.clone()]));
    }
    // state = current partial product, which lies in the support;
    // parent links rebuild the chain.
    let mut parent: BTreeMap<GroupElement, Option<(GroupElement, GroupElement)>> = BTreeMap::new();
    parent.insert(g.clone(), None);
    let mut frontier = vec![g.clone()];
    for _len in 1..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for s in &sg.elements {
                let q = sg.mul(p, s)?;
                if goal.contains(&q) {
                    let mut chain = vec![s.clone()];
                    let mut cur = p.clone();
                    while let Some(Some((prev, step))) = parent.get(&cur) {
                        chain.push(step.clone());
                        cur = prev.clone();
                    }
                    chain.push(g.clone());
                    chain.reverse();
                    return Ok(Some(chain));
                }
                if sg.elements.contains(&q) && !parent.contains_key(&q) {
                    parent.insert(q.clone(), Some((p.clone(), s.clone())));
                    next.push(q);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(None)
}

/// Checks that `chain` is a connection from `g` to `target` in the literal
/// sense; used to audit oracle witnesses.
pub fn is_connection(sg: &SupportGraph, chain: &[GroupElement], g: &GroupElement, target: &GroupElement) -> bool {
    let Some(first) = chain.first() else { return false };
    if first != g || !chain.iter().all(|x| sg.contains(x)) {
        return false;
    }
    let mut p = sg.group.identity();
    for (k, x) in chain.iter().enumerate() {
        p = match sg.group.multiply(&p, x) {
            Ok(p) => p,
            Err(_) => return false,
        };
        if k + 1 < chain.len() && !sg.contains(&p) {
            return false;
        }
    }
    let Ok(tinv) = sg.group.inverse(target) else { return false };
    p == *target || p == tinv
}

/// The partition induced by the oracle at depth `max_len`: `g` and `g'`
/// share a block iff chains exist in both directions. Ordered like
/// [`connection_classes`].
pub fn oracle_partition(sg: &SupportGraph, max_len: usize) -> Result<Vec<BTreeSet<GroupElement>>, ConnectionError> {
    let els: Vec<_> = sg.elements.iter().cloned().collect();
    let mut reach = BTreeMap::new();
    for a in &els {
        for b in &els {
            reach.insert((a.clone(), b.clone()), oracle_connected(sg, a, b, max_len)?.is_some());
        }
    }
    let mut out: Vec<BTreeSet<GroupElement>> = Vec::new();
    for a in &els {
        if out.iter().any(|blk| blk.contains(a)) {
            continue;
        }
        let blk = els
            .iter()
            .filter(|b| reach[&(a.clone(), (*b).clone())] && reach[&((*b).clone(), a.clone())])
            .cloned()
            .collect();
        out.push(blk);
    }
    Ok(out)
}

/// Scans every pair for the closure rules a class must satisfy; returns the
/// first violating pair `(g', g'')` if any.
pub fn closure_violation(sg: &SupportGraph, c: &ConnectionClass) -> Option<(GroupElement, GroupElement)> {
    for h in &c.members {
        if !c.members.contains(&sg.inv(h)) {
            return Some((h.clone(), sg.inv(h)));
        }
        for s in &sg.elements {
            let Ok(hs) = sg.group.multiply(h, s) else { continue };
            if sg.contains(&hs) && !(c.members.contains(&hs) && c.members.contains(s)) {
                return Some((h.clone(), s.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use proptest::prelude::*;

    fn el(g: &GroupSpec, c: &[i64]) -> GroupElement {
        g.element(c).unwrap()
    }

    fn set(g: &GroupSpec, cs: &[&[i64]]) -> BTreeSet<GroupElement> {
        cs.iter().map(|c| el(g, c)).collect()
    }

    #[test]
    fn axes_in_z2_stay_apart() {
        let z2 = GroupSpec::free(2);
        let sg = SupportGraph::from_coords(z2.clone(), &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap();
        let c = connection_class(&sg, &el(&z2, &[1, 0])).unwrap();
        assert_eq!(c.members, set(&z2, &[&[1, 0], &[-1, 0]]));
        let none = oracle_connected(&sg, &el(&z2, &[1, 0]), &el(&z2, &[0, 1]), complete_depth(&sg)).unwrap();
        assert_eq!(none, None);
    }

    #[test]
    fn osp_support_is_one_class() {
        let a = corpus::load("ex2").unwrap();
        let sg = SupportGraph::of_algebra(&a);
        let z = a.group().clone();
        let c = connection_class(&sg, &el(&z, &[1])).unwrap();
        assert_eq!(c.members, set(&z, &[&[-2], &[-1], &[1], &[2]]));
        let chain = oracle_connected(&sg, &el(&z, &[1]), &el(&z, &[2]), complete_depth(&sg))
            .unwrap()
            .unwrap();
        assert_eq!(chain, vec![el(&z, &[1]), el(&z, &[1])]);
        assert_eq!(connection_classes(&sg).unwrap().len(), 1);
    }

    #[test]
    fn self_inverse_singleton() {
        let c2 = GroupSpec::new(0, vec![2]).unwrap();
        let sg = SupportGraph::from_coords(c2.clone(), &[&[1]]).unwrap();
        let g = el(&c2, &[1]);
        assert_eq!(connection_class(&sg, &g).unwrap().members, set(&c2, &[&[1]]));
        assert_eq!(oracle_connected(&sg, &g, &g, 1).unwrap(), Some(vec![g.clone()]));
    }

    #[test]
    fn sl2_sum_has_two_classes() {
        let a = corpus::load("ex3").unwrap();
        let sg = SupportGraph::of_algebra(&a);
        let g = a.group().clone();
        let cs = connection_classes(&sg).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].members, set(&g, &[&[-1, 0], &[1, 0]]));
        assert_eq!(cs[1].members, set(&g, &[&[0, -1], &[0, 1]]));
        assert!(cs[0].representative < cs[1].representative);
    }

    #[test]
    fn empty_support() {
        let sg = SupportGraph::new(GroupSpec::free(1), []).unwrap();
        assert!(connection_classes(&sg).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        let z = GroupSpec::free(1);
        let lop = SupportGraph::from_coords(z.clone(), &[&[1], &[2], &[-2]]).unwrap();
        assert_eq!(
            connection_classes(&lop),
            Err(ConnectionError::NotSymmetric(el(&z, &[1])))
        );
        let sg = SupportGraph::from_coords(z.clone(), &[&[1], &[-1]]).unwrap();
        assert!(matches!(
            connection_class(&sg, &el(&z, &[3])),
            Err(ConnectionError::NotInSupport(_))
        ));
        assert!(matches!(
            oracle_connected(&sg, &el(&z, &[1]), &el(&z, &[1]), 0),
            Err(ConnectionError::ZeroDepth)
        ));
        assert!(matches!(
            SupportGraph::from_coords(z, &[&[0]]),
            Err(ConnectionError::ContainsIdentity(_))
        ));
    }

    #[test]
    fn torsion_chains_wrap() {
        // In Z/6 the chain 2,2 reaches 4 = 2^-1 and 2,2,2 would hit the identity.
        let c6 = GroupSpec::new(0, vec![6]).unwrap();
        let sg = SupportGraph::from_coords(c6.clone(), &[&[2], &[4], &[3]]).unwrap();
        let cs = connection_classes(&sg).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].members, set(&c6, &[&[2], &[4]]));
        assert_eq!(cs[1].members, set(&c6, &[&[3]]));
    }

    fn arb_symmetric() -> impl Strategy<Value = SupportGraph> {
        let groups = prop_oneof![
            Just(GroupSpec::free(2)),
            Just(GroupSpec::new(0, vec![6]).unwrap()),
            Just(GroupSpec::new(1, vec![2]).unwrap()),
        ];
        groups.prop_flat_map(|g| {
            let n = g.coordinate_count();
            prop::collection::vec(prop::collection::vec(-2i64..=2, n), 0..5).prop_map(move |raw| {
                let mut els = BTreeSet::new();
                for c in raw {
                    let e = g.element(&c).unwrap();
                    if !g.is_identity(&e).unwrap() {
                        els.insert(g.inverse(&e).unwrap());
                        els.insert(e);
                    }
                }
                SupportGraph::new(g.clone(), els).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn fixed_point_matches_oracle(sg in arb_symmetric()) {
            let classes = connection_classes(&sg).unwrap();
            let oracle = oracle_partition(&sg, complete_depth(&sg)).unwrap();
            let members: Vec<_> = classes.iter().map(|c| c.members.clone()).collect();
            prop_assert_eq!(members, oracle);
            for c in &classes {
                prop_assert_eq!(closure_violation(&sg, c), None);
                for a in &c.members {
                    for b in &c.members {
                        let w = oracle_connected(&sg, a, b, complete_depth(&sg)).unwrap().unwrap();
                        prop_assert!(is_connection(&sg, &w, a, b));
                    }
                }
            }
            let total: usize = classes.iter().map(ConnectionClass::len).sum();
            prop_assert_eq!(total, sg.len());
        }
    }
}
