//! Finite abelian groups presented as Z^m modulo a full-rank relation
//! lattice, homomorphisms as integer matrices, and abelianizations of
//! finite (permutation or cover) groups via coset enumeration.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::intmat::{
    self, lattice_basis, lattice_sum, quotient_invariant_factors, solve_in_row_lattice, Mat,
};
use crate::perm::Perm;
use crate::PermGroup;

/// Canonical invariant-factor decomposition d_1 | d_2 | ... (entries >= 2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct InvariantFactors {
    factors: Vec<u64>,
}

impl InvariantFactors {
    pub fn trivial() -> InvariantFactors {
        InvariantFactors { factors: vec![] }
    }

    /// Build from a list of cyclic orders (any order, 1s allowed); the
    /// result is renormalized to a divisibility chain.
    pub fn from_orders(orders: &[u64]) -> InvariantFactors {
        // Collect prime powers, then rebuild the chain by aligning the
        // largest powers of each prime.
        let mut by_prime: HashMap<u64, Vec<u32>> = HashMap::new();
        for &d in orders {
            let mut d = d;
            let mut p = 2;
            while p * p <= d {
                if d % p == 0 {
                    let mut e = 0;
                    while d % p == 0 {
                        d /= p;
                        e += 1;
                    }
                    by_prime.entry(p).or_default().push(e);
                }
                p += 1;
            }
            if d > 1 {
                by_prime.entry(d).or_default().push(1);
            }
        }
        let mut primes: Vec<u64> = by_prime.keys().cloned().collect();
        primes.sort_unstable();
        let depth = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; depth];
        for p in primes {
            let mut exps = by_prime[&p].clone();
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, e) in exps.iter().enumerate() {
                // Largest exponent goes to the largest factor (the end).
                factors[depth - 1 - slot] *= p.pow(*e);
            }
        }
        InvariantFactors {
            factors: factors.into_iter().filter(|&d| d >= 2).collect(),
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    /// The p-primary part.
    pub fn p_part(&self, p: u64) -> InvariantFactors {
        let factors: Vec<u64> = self
            .factors
            .iter()
            .map(|&d| {
                let mut q = 1u64;
                let mut d = d;
                while d % p == 0 {
                    d /= p;
                    q *= p;
                }
                q
            })
            .filter(|&q| q >= 2)
            .collect();
        InvariantFactors { factors }
    }

    /// Direct product, renormalized to a chain.
    pub fn direct_product(&self, other: &InvariantFactors) -> InvariantFactors {
        let mut orders = self.factors.clone();
        orders.extend_from_slice(&other.factors);
        InvariantFactors::from_orders(&orders)
    }

    /// Whether this group embeds into `other` (componentwise divisibility
    /// of aligned invariant factors).
    pub fn divides(&self, other: &InvariantFactors) -> bool {
        if self.factors.len() > other.factors.len() {
            return false;
        }
        let off = other.factors.len() - self.factors.len();
        self.factors
            .iter()
            .zip(other.factors[off..].iter())
            .all(|(a, b)| b % a == 0)
    }

    /// Conventional name: "0", "Z/2", "Z/2 x Z/6", ...
    pub fn name(&self) -> String {
        if self.factors.is_empty() {
            "0".to_string()
        } else {
            self.factors
                .iter()
                .map(|d| format!("Z/{}", d))
                .collect::<Vec<_>>()
                .join(" x ")
        }
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Serialize for InvariantFactors {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("InvariantFactors", 2)?;
        s.serialize_field("factors", &self.factors)?;
        s.serialize_field("name", &self.name())?;
        s.end()
    }
}

/// A finite abelian group Z^rank / relations, with optional labels naming
/// the generators (cosets of the source group).
#[derive(Clone, Debug)]
pub struct AbGroup {
    rank: usize,
    /// Full-rank HNF basis of the relation lattice.
    relations: Mat,
    labels: Vec<String>,
}

/// An element in reduced normal form (coordinates lie in the fundamental
/// box of the relation HNF).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AbElement {
    pub coords: Vec<i128>,
}

impl AbGroup {
    /// Construct from any generating set of the relation lattice. The
    /// lattice must have full rank (the group must be finite).
    pub fn new(rank: usize, relations: Mat, labels: Vec<String>) -> AbGroup {
        assert_eq!(relations.cols, rank);
        let basis = lattice_basis(&relations);
        assert_eq!(
            basis.rows, rank,
            "relation lattice must have full rank (finite group)"
        );
        let labels = if labels.is_empty() {
            (0..rank).map(|i| format!("g{}", i)).collect()
        } else {
            labels
        };
        AbGroup {
            rank,
            relations: basis,
            labels,
        }
    }

    pub fn trivial() -> AbGroup {
        AbGroup::new(0, Mat::zero(0, 0), vec![])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn relations(&self) -> &Mat {
        &self.relations
    }

    pub fn invariant_factors(&self) -> InvariantFactors {
        let diag = intmat::snf_diagonal(&self.relations);
        InvariantFactors::from_orders(
            &diag.iter().map(|&d| d.unsigned_abs() as u64).collect::<Vec<_>>(),
        )
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors().order()
    }

    /// Reduce a coordinate vector to its unique normal form modulo the
    /// relation lattice.
    pub fn reduce(&self, mut v: Vec<i128>) -> AbElement {
        assert_eq!(v.len(), self.rank);
        // relations is upper triangular with positive diagonal (full-rank
        // HNF), so one forward sweep normalizes.
        for i in 0..self.rank {
            let p = self.relations[(i, i)];
            let q = v[i].div_euclid(p);
            if q != 0 {
                for j in i..self.rank {
                    v[j] -= q * self.relations[(i, j)];
                }
            }
        }
        AbElement { coords: v }
    }

    pub fn zero(&self) -> AbElement {
        AbElement {
            coords: vec![0; self.rank],
        }
    }

    pub fn generator(&self, i: usize) -> AbElement {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.reduce(v)
    }

    pub fn add(&self, a: &AbElement, b: &AbElement) -> AbElement {
        let v = a
            .coords
            .iter()
            .zip(b.coords.iter())
            .map(|(x, y)| x + y)
            .collect();
        self.reduce(v)
    }

    pub fn neg(&self, a: &AbElement) -> AbElement {
        self.reduce(a.coords.iter().map(|x| -x).collect())
    }

    /// Lattice of the trivial subgroup (the relations themselves).
    pub fn zero_subgroup(&self) -> Mat {
        self.relations.clone()
    }

    /// Lattice of the whole group.
    pub fn full_subgroup(&self) -> Mat {
        if self.rank == 0 {
            Mat::zero(0, 0)
        } else {
            Mat::identity(self.rank)
        }
    }

    /// Subgroup generated by the given elements (as a lattice containing
    /// the relations).
    pub fn subgroup(&self, gens: &[AbElement]) -> Mat {
        let mut m = self.relations.clone();
        for g in gens {
            m.push_row(&g.coords);
        }
        lattice_basis(&m)
    }

    /// Invariant factors of sub2-quotient sub1/sub2 for subgroup lattices
    /// sub2 contained in sub1.
    pub fn quotient_structure(&self, sub1: &Mat, sub2: &Mat) -> Result<InvariantFactors> {
        quotient_invariant_factors(sub1, sub2).map(InvariantFactors::from_orders_vec).ok_or_else(
            || Error::NotSubgroup {
                sub: "denominator".into(),
                amb: "numerator".into(),
            },
        )
    }

    /// Invariant factors of the quotient of the whole group by a subgroup.
    pub fn quotient_by(&self, sub: &Mat) -> Result<InvariantFactors> {
        self.quotient_structure(&self.full_subgroup(), sub)
    }

    /// Present a subgroup lattice as an abelian group in its own right,
    /// together with the matrix embedding its generators into this group.
    pub fn subgroup_as_group(&self, sub: &Mat) -> (AbGroup, Mat) {
        let basis = lattice_basis(sub);
        assert_eq!(basis.rows, self.rank, "subgroup lattice must be full rank");
        let rels = solve_in_row_lattice(&basis, &self.relations)
            .expect("relations lie in every subgroup lattice");
        let g = AbGroup::new(self.rank, rels, vec![]);
        (g, basis)
    }
}

impl InvariantFactors {
    fn from_orders_vec(orders: Vec<u64>) -> InvariantFactors {
        InvariantFactors::from_orders(&orders)
    }
}

/// Direct sum with the coordinate offsets of each summand.
pub fn direct_sum(parts: &[&AbGroup]) -> (AbGroup, Vec<usize>) {
    let rank: usize = parts.iter().map(|g| g.rank).sum();
    let mut rel = Mat::zero(0, rank);
    let mut offsets = Vec::with_capacity(parts.len());
    let mut off = 0usize;
    let mut labels = Vec::new();
    for g in parts {
        offsets.push(off);
        for i in 0..g.relations.rows {
            let mut row = vec![0i128; rank];
            row[off..off + g.rank].copy_from_slice(g.relations.row(i));
            rel.push_row(&row);
        }
        for l in &g.labels {
            labels.push(l.clone());
        }
        off += g.rank;
    }
    (AbGroup::new(rank, rel, labels), offsets)
}

/// Homomorphism of finite abelian groups: v maps to v * matrix.
#[derive(Clone, Debug)]
pub struct AbHom {
    pub source: AbGroup,
    pub target: AbGroup,
    pub matrix: Mat,
}

impl AbHom {
    /// Build and verify well-definedness: the source relation lattice must
    /// map into the target relation lattice.
    pub fn new(source: AbGroup, target: AbGroup, matrix: Mat) -> Result<AbHom> {
        assert_eq!(matrix.rows, source.rank);
        assert_eq!(matrix.cols, target.rank);
        for i in 0..source.relations.rows {
            let image = matrix_apply(&matrix, source.relations.row(i));
            if solve_in_row_lattice(&target.relations, &Mat::from_rows(vec![image], target.rank))
                .is_none()
            {
                return Err(Error::IllDefinedHom(format!(
                    "source relation {:?} does not map into the target relations",
                    source.relations.row(i)
                )));
            }
        }
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &AbGroup) -> AbHom {
        AbHom {
            source: g.clone(),
            target: g.clone(),
            matrix: Mat::identity(g.rank),
        }
    }

    pub fn apply(&self, a: &AbElement) -> AbElement {
        self.target.reduce(matrix_apply(&self.matrix, &a.coords))
    }

    /// Kernel as a subgroup lattice of the source.
    pub fn kernel(&self) -> Mat {
        // v is in the kernel iff v * M lies in the target relation lattice:
        // stack M over R_t and project the left kernel onto the v-part.
        let stacked = self.matrix.stack(&self.target.relations);
        let ker = intmat::left_kernel(&stacked);
        let mut gens = self.source.relations.clone();
        for i in 0..ker.rows {
            gens.push_row(&ker.row(i)[..self.source.rank]);
        }
        lattice_basis(&gens)
    }

    /// Image as a subgroup lattice of the target.
    pub fn image(&self) -> Mat {
        lattice_sum(&self.matrix, &self.target.relations)
    }

    /// Push a subgroup lattice of the source forward to the target.
    pub fn push_subgroup(&self, sub: &Mat) -> Mat {
        let mut gens = self.target.relations.clone();
        for i in 0..sub.rows {
            gens.push_row(&matrix_apply(&self.matrix, sub.row(i)));
        }
        lattice_basis(&gens)
    }

    pub fn compose(&self, then: &AbHom) -> Result<AbHom> {
        AbHom::new(
            self.source.clone(),
            then.target.clone(),
            self.matrix.matmul(&then.matrix),
        )
    }
}

fn matrix_apply(m: &Mat, v: &[i128]) -> Vec<i128> {
    m.apply_row(v)
}

/// A finite group modulo a normal subgroup with abelian quotient, presented
/// as an `AbGroup` with a projection map.
pub struct AbQuotient<E: GroupElement> {
    pub group: AbGroup,
    /// Chosen generators (elements of the source group mapping to the
    /// `AbGroup` generators, in order).
    pub gens: Vec<E>,
    coset_log: HashMap<E, Vec<i128>>,
    modulo: HashSet<E>,
}

impl<E: GroupElement + fmt::Debug> AbQuotient<E> {
    pub fn project(&self, e: &E) -> AbElement {
        let rep = self.coset_rep(e);
        let log = self
            .coset_log
            .get(&rep)
            .expect("element lies in the enumerated group");
        self.group.reduce(log.clone())
    }

    fn coset_rep(&self, e: &E) -> E {
        self.modulo
            .iter()
            .map(|s| e.op(s))
            .min()
            .expect("modulo set contains the identity")
    }
}

/// Quotient of the group with the given (sorted, complete) element list by
/// the normal subgroup `modulo` (complete element list), which must contain
/// the commutator subgroup so the quotient is abelian.
pub fn quotient_ab<E: GroupElement + fmt::Debug>(
    elements: &[E],
    modulo: &[E],
) -> AbQuotient<E> {
    let modulo_set: HashSet<E> = modulo.iter().cloned().collect();
    let rep = |e: &E| -> E {
        modulo_set
            .iter()
            .map(|s| e.op(s))
            .min()
            .expect("modulo contains the identity")
    };
    let identity = elements
        .iter()
        .find(|e| e.is_id())
        .expect("element list contains the identity")
        .clone();
    let id_rep = rep(&identity);

    // Greedy choice of quotient generators.
    let mut gens: Vec<E> = Vec::new();
    let mut spanned: HashSet<E> = HashSet::new();
    spanned.insert(id_rep.clone());
    let span = |gens: &[E]| -> HashSet<E> {
        let mut seen: HashSet<E> = HashSet::new();
        seen.insert(id_rep.clone());
        let mut queue: VecDeque<E> = VecDeque::new();
        queue.push_back(id_rep.clone());
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = rep(&x.op(g));
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen
    };
    for e in elements {
        let r = rep(e);
        if !spanned.contains(&r) {
            gens.push(e.clone());
            spanned = span(&gens);
        }
    }

    // Breadth-first logs over the cosets; every traversal edge yields a
    // relation of the quotient.
    let m = gens.len();
    let mut coset_log: HashMap<E, Vec<i128>> = HashMap::new();
    coset_log.insert(id_rep.clone(), vec![0; m]);
    let mut queue: VecDeque<E> = VecDeque::new();
    queue.push_back(id_rep.clone());
    let mut relations = Mat::zero(0, m);
    let mut edges: Vec<(E, usize, E)> = Vec::new();
    while let Some(x) = queue.pop_front() {
        for (i, g) in gens.iter().enumerate() {
            let y = rep(&x.op(g));
            if !coset_log.contains_key(&y) {
                let mut log = coset_log[&x].clone();
                log[i] += 1;
                coset_log.insert(y.clone(), log);
                queue.push_back(y.clone());
            }
            edges.push((x.clone(), i, y));
        }
    }
    for (x, i, y) in edges {
        let lx = &coset_log[&x];
        let ly = &coset_log[&y];
        let mut r: Vec<i128> = lx.iter().zip(ly.iter()).map(|(a, b)| a - b).collect();
        r[i] += 1;
        relations.push_row(&r);
    }
    let labels = gens.iter().map(|g| format!("{:?}", g)).collect();
    let group = AbGroup::new(m, relations, labels);
    AbQuotient {
        group,
        gens,
        coset_log,
        modulo: modulo_set,
    }
}

/// Abelianization G/[G,G] of a permutation group, with its projection.
pub fn abelianization(g: &PermGroup) -> AbQuotient<Perm> {
    let derived = g.derived_subgroup();
    quotient_ab(g.elements(), derived.elements())
}
