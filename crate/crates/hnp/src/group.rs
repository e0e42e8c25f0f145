//! Permutation groups and generic finite-group algorithms: closure,
//! membership, derived subgroups, conjugacy (with the alternating-group
//! class-splitting rule), double cosets, Sylow subgroups and
//! subgroup-pattern containment.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Hard cap on explicit element enumeration. Everything this library
/// enumerates fits comfortably below it (the largest enumerated group is
/// the double cover of S7, order 10080); the cap turns accidental blowups
/// into a clean error instead of a hang.
pub const ENUM_CAP: usize = 200_000;

/// Order bound for the generic (search-based) conjugacy test; larger groups
/// must use the closed-form cycle-type rules.
pub const GENERIC_CONJ_CAP: usize = 20_000;

/// Abstract group element, for algorithms shared between permutations and
/// cover elements.
pub trait GroupElement: Clone + Eq + Hash + Ord {
    fn op(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn is_id(&self) -> bool;
}

impl GroupElement for Perm {
    fn op(&self, other: &Self) -> Self {
        self.compose(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_id(&self) -> bool {
        self.is_identity()
    }
}

/// Closure of `gens` under the group operations, as a sorted vector.
/// `identity` seeds the result (needed because `gens` may be empty).
pub fn closure<E: GroupElement>(identity: E, gens: &[E], cap: usize) -> Result<Vec<E>> {
    let mut set: HashSet<E> = HashSet::new();
    set.insert(identity.clone());
    let mut queue: VecDeque<E> = VecDeque::new();
    queue.push_back(identity);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.op(g);
            if set.insert(y.clone()) {
                if set.len() > cap {
                    return Err(Error::OrderThreshold { threshold: cap });
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<E> = set.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Normal closure of `seed` inside the group generated by `group_gens`.
pub fn normal_closure<E: GroupElement>(
    identity: E,
    group_gens: &[E],
    seed: &[E],
    cap: usize,
) -> Result<Vec<E>> {
    let mut current: Vec<E> = seed.to_vec();
    loop {
        let closed = closure(identity.clone(), &current, cap)?;
        let set: HashSet<&E> = closed.iter().collect();
        let mut new: Vec<E> = Vec::new();
        for x in &closed {
            for g in group_gens {
                let c = g.inv().op(x).op(g);
                if !set.contains(&c) {
                    new.push(c);
                }
            }
        }
        if new.is_empty() {
            return Ok(closed);
        }
        current = closed;
        current.extend(new);
    }
}

/// Derived subgroup of the group generated by `gens`, as a sorted element
/// vector: the normal closure of the commutators of the generators.
pub fn derived_elements<E: GroupElement>(identity: E, gens: &[E], cap: usize) -> Result<Vec<E>> {
    let mut comms: Vec<E> = Vec::new();
    for a in gens {
        for b in gens {
            let c = a.inv().op(&b.inv()).op(a).op(b);
            if !c.is_id() {
                comms.push(c);
            }
        }
    }
    normal_closure(identity, gens, &comms, cap)
}

/// A small generating set for a group given by its full (sorted) element
/// list: greedy sweep, adding elements that enlarge the closure.
pub fn minimal_generators<E: GroupElement>(identity: E, elements: &[E]) -> Vec<E> {
    let mut gens: Vec<E> = Vec::new();
    let mut have: HashSet<E> = HashSet::new();
    have.insert(identity.clone());
    for x in elements {
        if !have.contains(x) {
            gens.push(x.clone());
            have = closure(identity.clone(), &gens, elements.len())
                .expect("closure within known order")
                .into_iter()
                .collect();
            if have.len() == elements.len() {
                break;
            }
        }
    }
    gens
}

/// Subgroup patterns used by the decision predicates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubgroupPattern {
    V4,
    C3,
    C4,
    D4,
    C3xC3,
    /// A Klein four-group all of whose involutions move exactly four points
    /// (products of exactly two 2-cycles in the ambient natural action).
    V4DoubleTranspositions,
}

/// A finitely generated permutation group with cached element enumeration.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: OnceLock<Vec<Perm>>,
    elem_set: OnceLock<HashSet<Perm>>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree {}, <", self.degree)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ">)")
    }
}

impl PermGroup {
    /// Group generated by `gens` on `degree` points. Generator order is
    /// preserved for reproducible output.
    pub fn generate(gens: Vec<Perm>, degree: usize) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup {
            degree,
            gens,
            elements: OnceLock::new(),
            elem_set: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::generate(Vec::new(), degree).expect("no generators to mismatch")
    }

    pub fn symmetric(degree: usize) -> PermGroup {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::parse("(1,2)", degree).expect("fixed text"));
        }
        if degree >= 3 {
            let cyc: Vec<String> = (1..=degree).map(|i| i.to_string()).collect();
            gens.push(Perm::parse(&format!("({})", cyc.join(",")), degree).expect("fixed text"));
        }
        PermGroup::generate(gens, degree).expect("degrees match")
    }

    pub fn alternating(degree: usize) -> PermGroup {
        let mut gens = Vec::new();
        if degree >= 3 {
            gens.push(Perm::parse("(1,2,3)", degree).expect("fixed text"));
        }
        if degree >= 4 {
            let pts: Vec<String> = if degree % 2 == 1 {
                (1..=degree).map(|i| i.to_string()).collect()
            } else {
                (2..=degree).map(|i| i.to_string()).collect()
            };
            gens.push(Perm::parse(&format!("({})", pts.join(",")), degree).expect("fixed text"));
        }
        PermGroup::generate(gens, degree).expect("degrees match")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    /// All elements, sorted, computed at most once.
    pub fn elements(&self) -> &[Perm] {
        self.elements.get_or_init(|| {
            closure(Perm::identity(self.degree), &self.gens, ENUM_CAP)
                .expect("group exceeds the enumeration cap")
        })
    }

    fn element_set(&self) -> &HashSet<Perm> {
        self.elem_set
            .get_or_init(|| self.elements().iter().cloned().collect())
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.element_set().contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty() || self.order() == 1
    }

    /// Derived subgroup [G, G].
    pub fn derived_subgroup(&self) -> PermGroup {
        let elems = derived_elements(Perm::identity(self.degree), &self.gens, ENUM_CAP)
            .expect("derived subgroup within the enumeration cap");
        let gens = minimal_generators(Perm::identity(self.degree), &elems);
        let g = PermGroup::generate(gens, self.degree).expect("degrees match");
        g.elements.set(elems).ok();
        g
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < orbit.len() {
                for g in &self.gens {
                    let y = g.apply(orbit[i]);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    pub fn stabilizer_of_point(&self, point0: usize) -> PermGroup {
        let elems: Vec<Perm> = self
            .elements()
            .iter()
            .filter(|g| g.apply(point0) == point0)
            .cloned()
            .collect();
        let gens = minimal_generators(Perm::identity(self.degree), &elems);
        let g = PermGroup::generate(gens, self.degree).expect("degrees match");
        g.elements.set(elems).ok();
        g
    }

    fn factorial(n: usize) -> Option<usize> {
        let mut f: usize = 1;
        for k in 2..=n {
            f = f.checked_mul(k)?;
        }
        Some(f)
    }

    /// Whether this is the full symmetric group in its natural action.
    pub fn is_natural_symmetric(&self) -> bool {
        match Self::factorial(self.degree) {
            Some(f) if f <= ENUM_CAP => self.order() == f,
            _ => false,
        }
    }

    /// Whether this is the full alternating group in its natural action.
    pub fn is_natural_alternating(&self) -> bool {
        if self.degree < 3 || self.gens.iter().any(|g| !g.is_even()) {
            return false;
        }
        match Self::factorial(self.degree) {
            Some(f) if f / 2 <= ENUM_CAP => self.order() == f / 2,
            _ => false,
        }
    }

    /// Conjugacy test with witness: `x` with `x^-1 a x = b` when true.
    ///
    /// Natural symmetric groups use the cycle-type rule, natural alternating
    /// groups additionally apply the class-splitting rule; other groups fall
    /// back to exhaustive search below `GENERIC_CONJ_CAP`.
    pub fn are_conjugate(&self, a: &Perm, b: &Perm) -> Result<(bool, Option<Perm>)> {
        if self.is_natural_symmetric() {
            if a.degree() != self.degree || a.degree() != b.degree() {
                return Err(Error::DegreeMismatch {
                    expected: self.degree,
                    found: a.degree().max(b.degree()),
                });
            }
            return Ok(conjugate_in_symmetric(a, b));
        }
        if self.is_natural_alternating() {
            if !a.is_even() || !b.is_even() {
                return Err(Error::NotInGroup {
                    element: format!("{}", if a.is_even() { b } else { a }),
                });
            }
            return Ok(conjugate_in_alternating(a, b));
        }
        if self.order() > GENERIC_CONJ_CAP {
            return Err(Error::OrderThreshold {
                threshold: GENERIC_CONJ_CAP,
            });
        }
        if !self.contains(a) {
            return Err(Error::NotInGroup {
                element: format!("{}", a),
            });
        }
        if !self.contains(b) {
            return Err(Error::NotInGroup {
                element: format!("{}", b),
            });
        }
        for x in self.elements() {
            if &a.conjugate_by(x) == b {
                return Ok((true, Some(x.clone())));
            }
        }
        Ok((false, None))
    }

    /// Representatives of the double cosets H\G/D, the identity first;
    /// deterministic (elements scanned in sorted order).
    pub fn double_cosets(&self, h: &PermGroup, d: &PermGroup) -> Result<Vec<Perm>> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup {
                sub: format!("{:?}", h),
                amb: format!("{:?}", self),
            });
        }
        if !d.is_subgroup_of(self) {
            return Err(Error::NotSubgroup {
                sub: format!("{:?}", d),
                amb: format!("{:?}", self),
            });
        }
        let mut covered: HashSet<Perm> = HashSet::new();
        let mut reps = Vec::new();
        let mut total = 0usize;
        for x in self.elements() {
            if covered.contains(x) {
                continue;
            }
            reps.push(x.clone());
            for hh in h.elements() {
                let hx = hh.compose(x);
                for dd in d.elements() {
                    if covered.insert(hx.compose(dd)) {
                        total += 1;
                    }
                }
            }
        }
        debug_assert_eq!(total, self.order());
        Ok(reps)
    }

    /// Conjugate subgroup x^-1 H x.
    pub fn conjugate_subgroup(&self, x: &Perm) -> PermGroup {
        let gens = self.gens.iter().map(|g| g.conjugate_by(x)).collect();
        PermGroup::generate(gens, self.degree).expect("degrees match")
    }

    /// Intersection of two subgroups of a common ambient group.
    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let elems: Vec<Perm> = small
            .elements()
            .iter()
            .filter(|g| large.contains(g))
            .cloned()
            .collect();
        let gens = minimal_generators(Perm::identity(self.degree), &elems);
        let g = PermGroup::generate(gens, self.degree).expect("degrees match");
        g.elements.set(elems).ok();
        g
    }

    /// A Sylow p-subgroup (p-part of the order). Returns the trivial group
    /// when p does not divide |G|.
    pub fn sylow_subgroup(&self, p: usize) -> PermGroup {
        assert!(p >= 2, "p must be a prime");
        let mut target = 1usize;
        let mut rest = self.order();
        while rest % p == 0 {
            rest /= p;
            target *= p;
        }
        let identity = Perm::identity(self.degree);
        let mut p_elems: Vec<Perm> = vec![identity.clone()];
        let mut p_set: HashSet<Perm> = p_elems.iter().cloned().collect();
        while p_set.len() < target {
            // Normalizer of the current p-subgroup.
            let normalizer: Vec<&Perm> = self
                .elements()
                .iter()
                .filter(|g| p_elems.iter().all(|x| p_set.contains(&x.conjugate_by(g))))
                .collect();
            // An element of p-power order in the normalizer, outside P,
            // extends P to a larger p-group.
            let mut extended = false;
            for g in normalizer {
                let g: &Perm = g;
                let ord = g.order();
                let mut m = ord;
                while m % p == 0 {
                    m /= p;
                }
                // g^m has p-power order.
                let mut gp = g.clone();
                for _ in 1..m {
                    gp = gp.compose(g);
                }
                if !p_set.contains(&gp) {
                    let mut gens = minimal_generators(identity.clone(), &p_elems);
                    gens.push(gp);
                    p_elems = closure(identity.clone(), &gens, ENUM_CAP)
                        .expect("p-subgroup within the enumeration cap");
                    p_set = p_elems.iter().cloned().collect();
                    extended = true;
                    break;
                }
            }
            assert!(extended, "Sylow extension step must succeed");
        }
        let gens = minimal_generators(identity.clone(), &p_elems);
        let g = PermGroup::generate(gens, self.degree).expect("degrees match");
        let mut sorted = p_elems;
        sorted.sort_unstable();
        g.elements.set(sorted).ok();
        g
    }

    /// Whether the group contains a subgroup isomorphic to the pattern.
    pub fn contains_subgroup_type(&self, pattern: SubgroupPattern) -> bool {
        let elems = self.elements();
        match pattern {
            SubgroupPattern::C3 => elems.iter().any(|g| g.order() == 3),
            SubgroupPattern::C4 => elems.iter().any(|g| g.order() == 4),
            SubgroupPattern::V4 => {
                let invs: Vec<&Perm> = elems.iter().filter(|g| g.order() == 2).collect();
                for (i, a) in invs.iter().enumerate() {
                    for b in &invs[i + 1..] {
                        if a.compose(b) == b.compose(a) {
                            return true;
                        }
                    }
                }
                false
            }
            SubgroupPattern::V4DoubleTranspositions => {
                let is_dt = |g: &Perm| {
                    g.cycle_type().parts.iter().filter(|&&p| p == 2).count() == 2
                        && g.order() == 2
                };
                let invs: Vec<&Perm> = elems
                    .iter()
                    .filter(|g| g.order() == 2 && is_dt(g))
                    .collect();
                for (i, a) in invs.iter().enumerate() {
                    for b in &invs[i + 1..] {
                        let ab = a.compose(b);
                        if ab == b.compose(a) && is_dt(&ab) {
                            return true;
                        }
                    }
                }
                false
            }
            SubgroupPattern::D4 => {
                let rs: Vec<&Perm> = elems.iter().filter(|g| g.order() == 4).collect();
                let invs: Vec<&Perm> = elems.iter().filter(|g| g.order() == 2).collect();
                for r in &rs {
                    let r_inv = r.inverse();
                    let r2 = r.compose(r);
                    for s in &invs {
                        if **s == r2 {
                            continue;
                        }
                        if r.conjugate_by(s) == r_inv {
                            return true;
                        }
                    }
                }
                false
            }
            SubgroupPattern::C3xC3 => {
                let threes: Vec<&Perm> = elems.iter().filter(|g| g.order() == 3).collect();
                for (i, a) in threes.iter().enumerate() {
                    let a2 = a.compose(a);
                    for b in &threes[i + 1..] {
                        if **b != a2 && a.compose(b) == b.compose(a) {
                            return true;
                        }
                    }
                }
                false
            }
        }
    }

    /// Whether x^-1 A x = B for some x in this group (subgroup conjugacy,
    /// brute force; intended for small ambient groups).
    pub fn subgroups_conjugate(&self, a: &PermGroup, b: &PermGroup) -> bool {
        if a.order() != b.order() {
            return false;
        }
        let b_set = b.element_set();
        'outer: for x in self.elements() {
            for g in a.generators() {
                if !b_set.contains(&g.conjugate_by(x)) {
                    continue 'outer;
                }
            }
            return true;
        }
        false
    }
}

/// Cycle-type conjugacy in the full symmetric group, with an aligned-cycle
/// witness.
pub(crate) fn conjugate_in_symmetric(a: &Perm, b: &Perm) -> (bool, Option<Perm>) {
    if a.cycle_type() != b.cycle_type() {
        return (false, None);
    }
    (true, Some(symmetric_witness(a, b)))
}

/// Witness x with x^-1 a x = b, valid whenever cycle types agree.
fn symmetric_witness(a: &Perm, b: &Perm) -> Perm {
    let full = |p: &Perm| -> Vec<Vec<usize>> {
        let mut cs = p.cycles();
        let moved: HashSet<usize> = cs.iter().flatten().cloned().collect();
        for x in 0..p.degree() {
            if !moved.contains(&x) {
                cs.push(vec![x]);
            }
        }
        // Deterministic: longer cycles first, ties by smallest point.
        cs.sort_by(|c, d| d.len().cmp(&c.len()).then(c[0].cmp(&d[0])));
        cs
    };
    let ca = full(a);
    let cb = full(b);
    let mut images = vec![0u16; a.degree()];
    for (cyc_a, cyc_b) in ca.iter().zip(cb.iter()) {
        debug_assert_eq!(cyc_a.len(), cyc_b.len());
        for (pa, pb) in cyc_a.iter().zip(cyc_b.iter()) {
            images[*pa] = *pb as u16;
        }
    }
    let x = Perm::from_images(images).expect("cycle alignment is a bijection");
    debug_assert_eq!(&a.conjugate_by(&x), b);
    x
}

/// Conjugacy in the full alternating group via the splitting rule.
pub(crate) fn conjugate_in_alternating(a: &Perm, b: &Perm) -> (bool, Option<Perm>) {
    let ta = a.cycle_type();
    if ta != b.cycle_type() {
        return (false, None);
    }
    let x = symmetric_witness(a, b);
    if x.is_even() {
        return (true, Some(x));
    }
    if ta.splits_in_alternating() {
        // The symmetric class splits; an odd witness cannot be corrected.
        return (false, None);
    }
    // Correct the witness with an odd element of the centralizer of a.
    let c = odd_centralizing_element(a).expect("non-split type has an odd centralizing element");
    let xc = c.compose(&x);
    debug_assert!(xc.is_even());
    debug_assert_eq!(&a.conjugate_by(&xc), b);
    (true, Some(xc))
}

/// An odd permutation commuting with `a`, which exists exactly when the
/// cycle type of `a` has an even part or a repeated part.
fn odd_centralizing_element(a: &Perm) -> Option<Perm> {
    let mut cycles = a.cycles();
    let moved: HashSet<usize> = cycles.iter().flatten().cloned().collect();
    for x in 0..a.degree() {
        if !moved.contains(&x) {
            cycles.push(vec![x]);
        }
    }
    // An even-length cycle of a is itself an odd permutation in the
    // centralizer.
    for cyc in &cycles {
        if cyc.len() % 2 == 0 {
            let mut images: Vec<u16> = (0..a.degree() as u16).collect();
            for w in 0..cyc.len() {
                images[cyc[w]] = cyc[(w + 1) % cyc.len()] as u16;
            }
            return Some(Perm::from_images(images).expect("cycle is a bijection"));
        }
    }
    // Two cycles of equal odd length l: swapping them pointwise is a product
    // of l transpositions, odd, and commutes with a.
    cycles.sort_by_key(|c| (c.len(), c[0]));
    for pair in cycles.windows(2) {
        if pair[0].len() == pair[1].len() {
            let mut images: Vec<u16> = (0..a.degree() as u16).collect();
            for (p, q) in pair[0].iter().zip(pair[1].iter()) {
                images[*p] = *q as u16;
                images[*q] = *p as u16;
            }
            return Some(Perm::from_images(images).expect("swap is a bijection"));
        }
    }
    None
}
