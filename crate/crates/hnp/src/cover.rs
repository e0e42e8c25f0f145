//! The double cover of the symmetric group on n points (n >= 4), given by
//! generators z, tbar_1 .. tbar_{n-1} subject to
//!   (i)   z^2 = 1
//!   (ii)  z central
//!   (iii) tbar_i^2 = z
//!   (iv)  (tbar_i tbar_{i+1})^3 = z
//!   (v)   tbar_i tbar_j = z tbar_j tbar_i   for |i - j| >= 2,
//! with projection lambda(tbar_i) = (i, i+1) and base subgroup K = <z>;
//! and its restriction over the alternating group for n outside {6, 7}.
//!
//! Elements are realized as pairs (base permutation, sign): each base has a
//! canonical reduced word in the tbar_i (the insertion-sort word), and
//! multiplication renormalizes words one generator at a time, flipping the
//! sign once per far commutation (v) and once per cancellation (iii).
//! Braid moves tbar_i tbar_{i+1} tbar_i = tbar_{i+1} tbar_i tbar_{i+1},
//! which follow from (iii) + (iv), are sign-free.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{derived_elements, GroupElement};
#[cfg(test)]
use crate::group::closure;
use crate::perm::Perm;
use crate::PermGroup;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CoverKind {
    S,
    A,
}

/// An element z^sign * lift(base) of the cover.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverElement {
    base: Perm,
    sign: bool,
}

impl fmt::Debug for CoverElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign {
            write!(f, "z*")?;
        }
        if self.base.is_identity() {
            write!(f, "1")
        } else {
            write!(f, "lift({})", self.base)
        }
    }
}

/// Canonical word of a permutation in adjacent transpositions, stored as
/// runs: runs[k] = Some(s) encodes the ascending block t_s t_{s+1}..t_{k-1}
/// (1-based generator indices), and the full word is the concatenation of
/// the blocks for k = n, n-1, .., 2. This is the insertion-sort word.
fn runs_of(p: &Perm) -> Vec<Option<usize>> {
    let n = p.degree();
    let mut runs: Vec<Option<usize>> = vec![None; n + 1];
    // One-line notation, 1-based values at 1-based positions.
    let mut line: Vec<usize> = (0..n).map(|i| p.apply(i) + 1).collect();
    for target in (2..=n).rev() {
        let pos = line[..target].iter().position(|&v| v == target).expect("value present") + 1;
        if pos < target {
            runs[target] = Some(pos);
            for j in pos..target {
                line.swap(j - 1, j);
            }
        }
    }
    runs
}

/// Left-multiply the canonical word encoded in `runs` (levels 2..=level) by
/// the generator t_a, renormalizing; returns the number of sign flips.
fn left_mul(runs: &mut [Option<usize>], level: usize, a: usize) -> usize {
    debug_assert!(a >= 1 && a <= level - 1);
    match runs[level] {
        None => {
            if a == level - 1 {
                runs[level] = Some(a);
                0
            } else {
                left_mul(runs, level - 1, a)
            }
        }
        Some(s) => {
            if a + 1 < s {
                // Far-commute past the whole block of length level - s.
                (level - s) + left_mul(runs, level - 1, a)
            } else if a + 1 == s {
                // Extend the ascending block to the left.
                runs[level] = Some(s - 1);
                0
            } else if a == s {
                // Cancellation t_s t_s = z.
                runs[level] = if s == level - 1 { None } else { Some(s + 1) };
                1
            } else {
                // s < a <= level - 1: far-commute up to the block, one
                // sign-free braid move, then the leftover t_{a-1}
                // far-commutes out to the lower levels.
                (level - s - 2) + left_mul(runs, level - 1, a - 1)
            }
        }
    }
}

/// Sign (0 or 1) of the relation lift(p) * lift(q) = z^sign * lift(p q).
fn cocycle(p: &Perm, q: &Perm) -> usize {
    let n = p.degree();
    debug_assert_eq!(n, q.degree());
    let mut runs = runs_of(q);
    let mut flips = 0usize;
    // Feed the letters of the canonical word of p in reverse order.
    let p_runs = runs_of(p);
    for level in 2..=n {
        if let Some(s) = p_runs[level] {
            for a in (s..level).rev() {
                flips += left_mul(&mut runs, n, a);
            }
        }
    }
    debug_assert_eq!(runs, runs_of(&p.compose(q)), "normal form mismatch");
    flips % 2
}

impl CoverElement {
    pub fn base(&self) -> &Perm {
        &self.base
    }

    pub fn sign(&self) -> bool {
        self.sign
    }

    pub fn degree(&self) -> usize {
        self.base.degree()
    }

    pub fn mul(&self, other: &CoverElement) -> CoverElement {
        let c = cocycle(&self.base, &other.base);
        CoverElement {
            base: self.base.compose(&other.base),
            sign: self.sign ^ other.sign ^ (c == 1),
        }
    }

    pub fn inverse(&self) -> CoverElement {
        let binv = self.base.inverse();
        let c = cocycle(&binv, &self.base);
        CoverElement {
            base: binv,
            sign: self.sign ^ (c == 1),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.base.is_identity() && !self.sign
    }
}

impl GroupElement for CoverElement {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn is_id(&self) -> bool {
        self.is_identity()
    }
}

/// The double cover of the symmetric (kind S) or alternating (kind A)
/// group on n points.
#[derive(Clone, Debug)]
pub struct CoverGroup {
    n: usize,
    kind: CoverKind,
}

impl CoverGroup {
    pub fn build(n: usize, kind: CoverKind) -> Result<CoverGroup> {
        if n < 4 {
            return Err(Error::UnsupportedAmbient(format!(
                "cover requires n >= 4, got n = {}",
                n
            )));
        }
        if kind == CoverKind::A && (n == 6 || n == 7) {
            return Err(Error::UnsupportedAmbient(format!(
                "the restriction of this presentation over the alternating group \
                 is only a representation group for n outside {{6, 7}}; \
                 n = {} must go through the dedicated decision predicates",
                n
            )));
        }
        let cover = CoverGroup { n, kind };
        debug_assert!(cover.relations_hold());
        Ok(cover)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> CoverKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        let fact: usize = (2..=self.n).product();
        match self.kind {
            CoverKind::S => 2 * fact,
            CoverKind::A => fact,
        }
    }

    pub fn identity(&self) -> CoverElement {
        CoverElement {
            base: Perm::identity(self.n),
            sign: false,
        }
    }

    /// The central element z.
    pub fn z(&self) -> CoverElement {
        CoverElement {
            base: Perm::identity(self.n),
            sign: true,
        }
    }

    /// tbar_i (kind S only; 1-based i <= n-1).
    pub fn t_bar(&self, i: usize) -> CoverElement {
        assert!(self.kind == CoverKind::S, "tbar_i is odd; use lifts of even elements in kind A");
        assert!(i >= 1 && i < self.n);
        let t = Perm::parse(&format!("({},{})", i, i + 1), self.n).expect("fixed text");
        CoverElement {
            base: t,
            sign: false,
        }
    }

    /// Canonical lift of a base permutation (sign 0 on the canonical word).
    pub fn lift(&self, p: &Perm) -> Result<CoverElement> {
        if p.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: p.degree(),
            });
        }
        if self.kind == CoverKind::A && !p.is_even() {
            return Err(Error::NotInGroup {
                element: format!("{}", p),
            });
        }
        Ok(CoverElement {
            base: p.clone(),
            sign: false,
        })
    }

    /// The projection lambda.
    pub fn lambda(&self, e: &CoverElement) -> Perm {
        e.base.clone()
    }

    /// Full preimage lambda^-1(B) of a subgroup of the base, as a sorted
    /// element list of size 2|B|.
    pub fn preimage_subgroup(&self, b: &PermGroup) -> Result<Vec<CoverElement>> {
        if b.degree() != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: b.degree(),
            });
        }
        let mut out = Vec::with_capacity(2 * b.order());
        for p in b.elements() {
            if self.kind == CoverKind::A && !p.is_even() {
                return Err(Error::NotInGroup {
                    element: format!("{}", p),
                });
            }
            out.push(CoverElement {
                base: p.clone(),
                sign: false,
            });
            out.push(CoverElement {
                base: p.clone(),
                sign: true,
            });
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Generators of the preimage lambda^-1(B): z together with the lifts
    /// of the generators of B.
    pub fn preimage_generators(&self, b: &PermGroup) -> Result<Vec<CoverElement>> {
        let mut gens = vec![self.z()];
        for g in b.generators() {
            gens.push(self.lift(g)?);
        }
        Ok(gens)
    }

    /// Whether z lies in the derived subgroup of lambda^-1(B).
    pub fn z_in_derived_of_preimage(&self, b: &PermGroup) -> Result<bool> {
        let gens = self.preimage_generators(b)?;
        let derived = derived_elements(self.identity(), &gens, crate::group::ENUM_CAP)?;
        Ok(derived.binary_search(&self.z()).is_ok())
    }

    /// Check relations (i)-(v) on the generators (kind A checks them on the
    /// products tbar_1 tbar_i it is generated by, via the kind-S arithmetic
    /// which it shares).
    pub fn relations_hold(&self) -> bool {
        let n = self.n;
        let t = |i: usize| -> CoverElement {
            let p = Perm::parse(&format!("({},{})", i, i + 1), n).expect("fixed text");
            CoverElement {
                base: p,
                sign: false,
            }
        };
        let z = self.z();
        let id = self.identity();
        // (i) z^2 = 1
        if z.mul(&z) != id {
            return false;
        }
        for i in 1..n {
            let ti = t(i);
            // (ii) z central
            if z.mul(&ti) != ti.mul(&z) {
                return false;
            }
            // (iii) tbar_i^2 = z
            if ti.mul(&ti) != z {
                return false;
            }
        }
        // (iv) (tbar_i tbar_{i+1})^3 = z
        for i in 1..n - 1 {
            let a = t(i).mul(&t(i + 1));
            if a.mul(&a).mul(&a) != z {
                return false;
            }
        }
        // (v) tbar_i tbar_j = z tbar_j tbar_i for |i-j| >= 2
        for i in 1..n {
            for j in 1..n {
                if i.abs_diff(j) >= 2 && t(i).mul(&t(j)) != z.mul(&t(j)).mul(&t(i)) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::minimal_generators;

    fn p(text: &str, n: usize) -> Perm {
        Perm::parse(text, n).unwrap()
    }

    fn grp(gens: &[&str], n: usize) -> PermGroup {
        PermGroup::generate(gens.iter().map(|t| p(t, n)).collect(), n).unwrap()
    }

    #[test]
    fn build_guards() {
        assert!(CoverGroup::build(4, CoverKind::S).is_ok());
        assert!(CoverGroup::build(3, CoverKind::S).is_err());
        assert!(CoverGroup::build(6, CoverKind::A).is_err());
        assert!(CoverGroup::build(7, CoverKind::A).is_err());
        assert!(CoverGroup::build(8, CoverKind::A).is_ok());
        assert!(CoverGroup::build(6, CoverKind::S).is_ok());
    }

    #[test]
    fn relation_suite_small() {
        for n in 4..=8 {
            assert!(CoverGroup::build(n, CoverKind::S).unwrap().relations_hold());
        }
    }

    #[test]
    fn generator_relations_explicit() {
        let c = CoverGroup::build(5, CoverKind::S).unwrap();
        let z = c.z();
        // tbar_1^2 = z.
        assert_eq!(c.t_bar(1).mul(&c.t_bar(1)), z);
        // Far generators anticommute (differ by z).
        let ab = c.t_bar(1).mul(&c.t_bar(3));
        let ba = c.t_bar(3).mul(&c.t_bar(1));
        assert_ne!(ab, ba);
        assert_eq!(ab, z.mul(&ba));
    }

    #[test]
    fn enumerated_order_and_group_axioms() {
        let c = CoverGroup::build(4, CoverKind::S).unwrap();
        let gens: Vec<CoverElement> = (1..4).map(|i| c.t_bar(i)).collect();
        let all = closure(c.identity(), &gens, 10_000).unwrap();
        assert_eq!(all.len(), 48);
        // Sampled associativity.
        for i in (0..all.len()).step_by(7) {
            for j in (0..all.len()).step_by(11) {
                for k in (0..all.len()).step_by(13) {
                    let (a, b, d) = (&all[i], &all[j], &all[k]);
                    assert_eq!(a.mul(b).mul(d), a.mul(&b.mul(d)));
                }
            }
        }
        // Inverses.
        for a in &all {
            assert!(a.mul(&a.inverse()).is_identity());
        }
        // lambda is a homomorphism.
        for i in (0..all.len()).step_by(5) {
            for j in (0..all.len()).step_by(7) {
                let (a, b) = (&all[i], &all[j]);
                assert_eq!(a.mul(b).base, a.base.compose(&b.base));
            }
        }
    }

    #[test]
    fn alternating_cover_order_and_schur_multiplier() {
        // Kind A for n = 5: 120 elements, and K meets the derived subgroup
        // in <z> (z is a commutator of lifted double transpositions).
        let c = CoverGroup::build(5, CoverKind::A).unwrap();
        let a5 = PermGroup::alternating(5);
        let pre = c.preimage_subgroup(&a5).unwrap();
        assert_eq!(pre.len(), 120);
        assert_eq!(c.order(), 120);
        let gens = minimal_generators(c.identity(), &pre);
        let derived = derived_elements(c.identity(), &gens, 10_000).unwrap();
        assert!(derived.binary_search(&c.z()).is_ok());
    }

    #[test]
    fn z_is_commutator_of_v4_lifts() {
        // [lift((1,2)(3,4)), lift((1,3)(2,4))] = z in the cover of S4.
        let c = CoverGroup::build(4, CoverKind::S).unwrap();
        let a = c.lift(&p("(1,2)(3,4)", 4)).unwrap();
        let b = c.lift(&p("(1,3)(2,4)", 4)).unwrap();
        let comm = a.inverse().mul(&b.inverse()).mul(&a).mul(&b);
        assert_eq!(comm, c.z());
    }

    #[test]
    fn preimages() {
        let c = CoverGroup::build(4, CoverKind::S).unwrap();
        // Trivial base: <z>, order 2.
        let pre = c.preimage_subgroup(&PermGroup::trivial(4)).unwrap();
        assert_eq!(pre.len(), 2);
        // V4 of double transpositions: order 8, nonabelian (quaternion:
        // a unique involution z, all six other nontrivial elements of
        // order 4).
        let v4 = grp(&["(1,2)(3,4)", "(1,3)(2,4)"], 4);
        let pre = c.preimage_subgroup(&v4).unwrap();
        assert_eq!(pre.len(), 8);
        let id = c.identity();
        let mut involutions = 0;
        let mut order4 = 0;
        for x in &pre {
            if x.is_identity() {
                continue;
            }
            let x2 = x.mul(x);
            if x2.is_identity() {
                involutions += 1;
            } else if x2.mul(&x2).is_identity() {
                order4 += 1;
            }
        }
        let _ = id;
        assert_eq!((involutions, order4), (1, 6));
        // <(1,2)>: cyclic of order 4 (lift squares to z).
        let c2 = grp(&["(1,2)"], 4);
        let pre = c.preimage_subgroup(&c2).unwrap();
        assert_eq!(pre.len(), 4);
        let gen = c.lift(&p("(1,2)", 4)).unwrap();
        assert_eq!(gen.mul(&gen), c.z());
        // Preimage generators generate the whole preimage.
        let gens = c.preimage_generators(&v4).unwrap();
        let closed = closure(c.identity(), &gens, 100).unwrap();
        assert_eq!(closed, c.preimage_subgroup(&v4).unwrap());
    }

    #[test]
    fn base_subgroup_meets_cyclic_preimages_trivially() {
        // K meets [preimage of C, preimage of C] trivially for cyclic C;
        // spot-check in S5 (the full S7 sweep runs in the property suite).
        let c = CoverGroup::build(5, CoverKind::S).unwrap();
        for text in ["(1,2)", "(1,2,3)", "(1,2,3,4)", "(1,2,3,4,5)", "(1,2)(3,4)"] {
            let cyc = grp(&[text], 5);
            assert!(!c.z_in_derived_of_preimage(&cyc).unwrap(), "C = <{}>", text);
        }
        // And z *is* in the derived subgroup of the preimage of V4.
        let v4 = grp(&["(1,2)(3,4)", "(1,3)(2,4)"], 5);
        assert!(c.z_in_derived_of_preimage(&v4).unwrap());
    }
}
