//! Field-counting support data: the index ind(g), the constant
//! alpha(G) = min_{g != 1} ind(g), an exhaustive catalog of transitive
//! subgroups of S_n for n <= 6 built by breadth-first subgroup closure, and
//! the cross-check that every catalog entry with nonzero H^1 has alpha > 1.

use std::collections::HashSet;

use serde::Serialize;

use crate::abelian::InvariantFactors;
use crate::error::{Error, Result};
use crate::obstruction::{h1_invariant, Ambient, ExtensionProblem};
use crate::oracle::{sha_omega2_with_budget, DEFAULT_BUDGET};
use crate::perm::Perm;
use crate::tables::small_group_name;
use crate::PermGroup;

/// ind(g) = degree minus the number of orbits of <g> on points.
pub fn ind(g: &Perm) -> usize {
    g.cycles().iter().map(|c| c.len() - 1).sum()
}

/// alpha(G) = min over nonidentity g of ind(g).
pub fn alpha(g: &PermGroup) -> Result<usize> {
    if g.order() <= 1 {
        return Err(Error::InvalidInput(
            "alpha is undefined for the trivial group".into(),
        ));
    }
    Ok(g.elements()
        .iter()
        .filter(|x| !x.is_identity())
        .map(ind)
        .min()
        .expect("nontrivial group"))
}

type Fingerprint = (usize, Vec<usize>, Vec<(usize, usize)>);

fn fingerprint(g: &PermGroup) -> Fingerprint {
    let mut orbit_sizes: Vec<usize> = g.orbits().iter().map(|o| o.len()).collect();
    orbit_sizes.sort_unstable();
    let mut histogram: Vec<(usize, usize)> = Vec::new();
    let mut orders: Vec<usize> = g.elements().iter().map(|x| x.order()).collect();
    orders.sort_unstable();
    for o in orders {
        match histogram.last_mut() {
            Some((v, c)) if *v == o => *c += 1,
            _ => histogram.push((o, 1)),
        }
    }
    (g.order(), orbit_sizes, histogram)
}

/// All subgroups of `g` generated by at most `max_gens` elements, one per
/// conjugacy class of subgroups. Breadth-first closure: extend each class
/// representative by every element of `g` (skipping elements that provably
/// generate an already-seen subgroup), deduplicating by isomorphism
/// fingerprint plus an explicit conjugacy search.
pub fn subgroup_classes(g: &PermGroup, max_gens: usize) -> Result<Vec<PermGroup>> {
    let degree = g.degree();
    let trivial = PermGroup::trivial(degree);
    let mut classes = vec![trivial.clone()];
    let mut prints = vec![fingerprint(&trivial)];
    let mut seen_sets: HashSet<Vec<Perm>> = HashSet::new();
    seen_sets.insert(trivial.elements().to_vec());
    let mut frontier = vec![0usize];
    for _ in 0..max_gens {
        let mut next = Vec::new();
        for &si in &frontier {
            let s = classes[si].clone();
            // <S, x> is unchanged by x -> s x t and x -> x^-1, so mark those.
            let mut used: HashSet<Perm> = s.elements().iter().cloned().collect();
            for x in g.elements() {
                if used.contains(x) {
                    continue;
                }
                let xi = x.inverse();
                for t in s.elements() {
                    used.insert(t.compose(x));
                    used.insert(x.compose(t));
                    used.insert(t.compose(&xi));
                    used.insert(xi.compose(t));
                }
                let mut gens = s.generators().to_vec();
                gens.push(x.clone());
                let cand = PermGroup::generate(gens, degree)?;
                if !seen_sets.insert(cand.elements().to_vec()) {
                    continue;
                }
                let fp = fingerprint(&cand);
                let dup = classes
                    .iter()
                    .zip(prints.iter())
                    .any(|(c, p)| *p == fp && g.subgroups_conjugate(c, &cand));
                if dup {
                    continue;
                }
                prints.push(fp);
                classes.push(cand);
                next.push(classes.len() - 1);
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(classes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum H1Method {
    /// G is the full symmetric or alternating group in place.
    Natural,
    /// G was rewritten as a natural symmetric/alternating group on the
    /// cosets of a subgroup of factorial (or half-factorial) index.
    Recoordinatized,
    /// Brute-force cohomology of the Chevalley module.
    Oracle,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransitiveGroupRecord {
    pub degree: usize,
    pub name: String,
    pub order: usize,
    pub generators: Vec<String>,
    pub stabilizer_generators: Vec<String>,
    pub alpha: usize,
    /// None when no method applies within budget.
    pub h1: Option<InvariantFactors>,
    pub method: H1Method,
    #[serde(skip)]
    pub group: PermGroup,
    #[serde(skip)]
    pub point_stabilizer: PermGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    #[serde(flatten)]
    pub record: TransitiveGroupRecord,
    /// Whether (h1 != 0 implies alpha > 1); None when h1 is unknown.
    pub verdict: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub degree: usize,
    pub entries: Vec<CensusEntry>,
}

fn factorial(m: usize) -> usize {
    (2..=m).product()
}

/// Try to rewrite (G, H) over a natural symmetric/alternating ambient of
/// another degree m: if |G| = m! or m!/2, look for an index-m subgroup whose
/// right-coset action is faithful with natural image, and transport H.
fn recoordinatize(g: &PermGroup, h: &PermGroup) -> Result<Option<(Ambient, PermGroup)>> {
    let order = g.order();
    for m in 4..=8usize {
        let fact = factorial(m);
        let want_sym = order == fact;
        let want_alt = 2 * order == fact;
        if !want_sym && !want_alt {
            continue;
        }
        let target = order / m;
        for s in subgroup_classes(g, 3)? {
            if s.order() != target {
                continue;
            }
            // Right cosets S\G; right multiplication is a homomorphism for
            // the apply-left-then-right composition convention.
            let rep = |a: &Perm| -> Perm {
                s.elements()
                    .iter()
                    .map(|se| se.compose(a))
                    .min()
                    .expect("S nonempty")
            };
            let mut reps: Vec<Perm> = vec![rep(&Perm::identity(g.degree()))];
            for a in g.elements() {
                let r = rep(a);
                if !reps.contains(&r) {
                    reps.push(r);
                }
            }
            if reps.len() != m {
                continue;
            }
            let act = |p: &Perm| -> Perm {
                let images: Vec<u16> = reps
                    .iter()
                    .map(|r| {
                        let t = rep(&r.compose(p));
                        reps.iter().position(|q| *q == t).expect("coset") as u16
                    })
                    .collect();
                Perm::from_images(images).expect("coset action is a permutation")
            };
            let image = PermGroup::generate(g.generators().iter().map(&act).collect(), m)?;
            if image.order() != order {
                continue; // not faithful
            }
            let ambient = if want_sym && image.is_natural_symmetric() {
                Ambient::Sym(m)
            } else if want_alt && image.is_natural_alternating() {
                Ambient::Alt(m)
            } else {
                continue;
            };
            let h_image = PermGroup::generate(h.generators().iter().map(&act).collect(), m)?;
            return Ok(Some((ambient, h_image)));
        }
    }
    Ok(None)
}

/// H^1(k, Pic Xbar) for the norm-one torus of (G, H), by the first method
/// that applies: natural decision path, recoordinatized decision path,
/// brute-force oracle.
pub fn h1_for(g: &PermGroup, h: &PermGroup, budget: u128) -> (Option<InvariantFactors>, H1Method) {
    if g.degree() >= 4 {
        let ambient = if g.is_natural_symmetric() {
            Some(Ambient::Sym(g.degree()))
        } else if g.is_natural_alternating() {
            Some(Ambient::Alt(g.degree()))
        } else {
            None
        };
        if let Some(ambient) = ambient {
            if let Ok(prob) = ExtensionProblem::new(ambient, h.clone(), Vec::new()) {
                if let Ok(v) = h1_invariant(&prob) {
                    return (Some(v), H1Method::Natural);
                }
            }
        }
    }
    if let Ok(Some((ambient, h_image))) = recoordinatize(g, h) {
        if let Ok(prob) = ExtensionProblem::new(ambient, h_image, Vec::new()) {
            if let Ok(v) = h1_invariant(&prob) {
                return (Some(v), H1Method::Recoordinatized);
            }
        }
    }
    match sha_omega2_with_budget(g, h, budget) {
        Ok(v) => (Some(v), H1Method::Oracle),
        Err(_) => (None, H1Method::Unknown),
    }
}

/// Transitive subgroup classes of S_n only, without H^1 data (cheap).
pub fn transitive_classes(n: usize) -> Result<Vec<PermGroup>> {
    if !(2..=6).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "catalog supports degrees 2..=6, got {}",
            n
        )));
    }
    let sn = PermGroup::symmetric(n);
    let mut out: Vec<PermGroup> = subgroup_classes(&sn, 3)?
        .into_iter()
        .filter(|c| c.is_transitive())
        .collect();
    out.sort_by_key(|c| (c.order(), c.elements().to_vec()));
    Ok(out)
}

fn make_record(n: usize, group: PermGroup, budget: u128) -> Result<TransitiveGroupRecord> {
    let point_stabilizer = group.stabilizer_of_point(0);
    debug_assert_eq!(group.order(), point_stabilizer.order() * n);
    let a = alpha(&group)?;
    let (h1, method) = h1_for(&group, &point_stabilizer, budget);
    Ok(TransitiveGroupRecord {
        degree: n,
        name: small_group_name(&group),
        order: group.order(),
        generators: group.generators().iter().map(|p| p.to_string()).collect(),
        stabilizer_generators: point_stabilizer
            .generators()
            .iter()
            .map(|p| p.to_string())
            .collect(),
        alpha: a,
        h1,
        method,
        group,
        point_stabilizer,
    })
}

/// All transitive subgroups of S_n up to conjugacy, with alpha and H^1.
pub fn transitive_catalog(n: usize) -> Result<Vec<TransitiveGroupRecord>> {
    transitive_catalog_with_budget(n, DEFAULT_BUDGET)
}

pub fn transitive_catalog_with_budget(
    n: usize,
    budget: u128,
) -> Result<Vec<TransitiveGroupRecord>> {
    transitive_classes(n)?
        .into_iter()
        .map(|g| make_record(n, g, budget))
        .collect()
}

/// Catalog plus the per-record verdict (h1 != 0 implies alpha > 1).
pub fn census_run(n: usize) -> Result<CensusReport> {
    census_run_with_budget(n, DEFAULT_BUDGET)
}

pub fn census_run_with_budget(n: usize, budget: u128) -> Result<CensusReport> {
    let entries = transitive_catalog_with_budget(n, budget)?
        .into_iter()
        .map(|record| {
            let verdict = record
                .h1
                .as_ref()
                .map(|v| v.order() == 1 || record.alpha > 1);
            CensusEntry { record, verdict }
        })
        .collect();
    Ok(CensusReport { degree: n, entries })
}

impl CensusReport {
    /// Plain-text table, one row per transitive class.
    pub fn render_text(&self) -> String {
        let mut out = format!("transitive groups of degree {}\n", self.degree);
        out.push_str(&format!(
            "{:<18} {:>6} {:>6}  {:<10} {:<16} {}\n",
            "name", "order", "alpha", "h1", "method", "verdict"
        ));
        for e in &self.entries {
            let r = &e.record;
            let h1 = match &r.h1 {
                Some(v) if v.order() == 1 => "0".to_string(),
                Some(v) => v.name(),
                None => "unknown".to_string(),
            };
            let verdict = match e.verdict {
                Some(true) => "ok",
                Some(false) => "FAIL",
                None => "-",
            };
            out.push_str(&format!(
                "{:<18} {:>6} {:>6}  {:<10} {:<16} {}\n",
                r.name,
                r.order,
                r.alpha,
                h1,
                format!("{:?}", r.method).to_lowercase(),
                verdict
            ));
        }
        out
    }
}
