//! Closed-form structural predicates and induced cycle/path lengths.
//!
//! Every function here reads only the factor list of the ring; nothing builds
//! the graph. The search oracles in [`crate::oracles`] are the independent
//! check on these values.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::product_ring::ProductRing;

/// Component statistics of the one-factor graph of a finite field of order `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldStats {
    pub q: u64,
    /// 1 iff `q` is odd, i.e. iff `1 != -1`.
    pub eps: u64,
    /// Number of connected components.
    pub components: u64,
    /// Number of single-edge components `{a, a^-1}`.
    pub bipartite_components: u64,
}

impl FieldStats {
    pub fn new(q: u64) -> Self {
        let eps = q % 2;
        FieldStats {
            q,
            eps,
            components: (q + eps) / 2,
            bipartite_components: (q - 2 - eps) / 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HamStatus {
    HamiltonianCycle,
    HamiltonianPathOnly,
    Neither,
}

impl HamStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            HamStatus::HamiltonianCycle => "cycle",
            HamStatus::HamiltonianPathOnly => "path",
            HamStatus::Neither => "neither",
        }
    }
}

/// A cycle or path length in edges, or the marker for "no such subgraph".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthValue {
    NoCycle,
    NoPath,
    Finite(u64),
}

impl LengthValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            LengthValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl std::fmt::Display for LengthValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LengthValue::NoCycle => f.write_str("none"),
            LengthValue::NoPath => f.write_str("none"),
            LengthValue::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for LengthValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LengthValue::Finite(v) => s.serialize_u64(*v),
            LengthValue::NoCycle => s.serialize_str("NoCycle"),
            LengthValue::NoPath => s.serialize_str("NoPath"),
        }
    }
}

/// Residue field orders sorted ascending, the shape of `R/J(R)` up to
/// isomorphism.
fn quotient_shape(ring: &ProductRing) -> Vec<u64> {
    let mut q: Vec<u64> = ring.residue_field_sizes().into_iter().map(u64::from).collect();
    q.sort_unstable();
    q
}

fn is_z2_plus_field(ring: &ProductRing) -> bool {
    ring.is_semisimple() && quotient_shape(ring).first() == Some(&2) && ring.n() == 2
}

pub fn thm_hamiltonian(ring: &ProductRing) -> HamStatus {
    if ring.is_local() {
        let m = ring.radical_size();
        return match (ring.factor(0).residue_field_size(), m) {
            (2, m) if m >= 3 => HamStatus::HamiltonianCycle,
            (2, 2) => HamStatus::HamiltonianPathOnly,
            _ => HamStatus::Neither,
        };
    }
    if is_z2_plus_field(ring) {
        HamStatus::HamiltonianPathOnly
    } else {
        HamStatus::HamiltonianCycle
    }
}

pub fn thm_pancyclic(ring: &ProductRing) -> bool {
    !ring.is_local() && !is_z2_plus_field(ring)
}

pub fn thm_eulerian(ring: &ProductRing) -> bool {
    if ring.size() == 2 {
        return true;
    }
    let shape = quotient_shape(ring);
    ring.size() % 2 == 1 && shape.len() >= 2 && shape.iter().all(|&q| q == 3)
}

pub fn thm_euler_trail(ring: &ProductRing) -> bool {
    let shape = quotient_shape(ring);
    if ring.is_local() {
        return ring.size() == 4 && shape == [2];
    }
    ring.is_semisimple() && (shape == [2, 2] || shape == [2, 4])
}

fn local_params(ring: &ProductRing) -> Result<(u64, u64)> {
    if !ring.is_local() {
        return Err(Error::NotLocal);
    }
    Ok((ring.radical_size(), ring.factor(0).residue_field_size() as u64))
}

pub fn lc_local(ring: &ProductRing) -> Result<LengthValue> {
    let (m, f) = local_params(ring)?;
    Ok(match (m, f) {
        (1, _) => LengthValue::NoCycle,
        (2, f) if f <= 3 => LengthValue::NoCycle,
        (_, f) if f <= 3 => LengthValue::Finite(3),
        _ => LengthValue::Finite(4),
    })
}

pub fn lp_local(ring: &ProductRing) -> Result<LengthValue> {
    let (m, f) = local_params(ring)?;
    Ok(LengthValue::Finite(match (m == 1, f <= 3) {
        (true, true) => 0,
        (true, false) => 1,
        (false, true) => 1,
        (false, false) => 2,
    }))
}

/// The induced-cycle length formula with residue field `d` (1-based) in the
/// distinguished position. Pure substitution; no special cases.
pub fn lc_closed_form(ring: &ProductRing, d: usize) -> Result<i64> {
    if ring.is_local() {
        return Err(Error::Local);
    }
    let n = ring.n();
    if d == 0 || d > n {
        return Err(Error::BadIndex { index: d, n });
    }
    let stats: Vec<FieldStats> = ring
        .residue_field_sizes()
        .into_iter()
        .map(|q| FieldStats::new(q as u64))
        .collect();
    let fd = stats[d - 1];
    let rest = stats
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != d - 1)
        .map(|(_, s)| s);
    let rest_sum: i64 = rest.clone().map(|s| (s.q + s.eps) as i64).sum();
    let rest_q: i64 = rest.map(|s| s.q as i64).sum();
    let theta = ((fd.q + fd.eps) as i64).min(rest_sum) / 2;
    let denom = fd.q as i64 + 4 - 2 * theta - fd.eps as i64;
    let theta_star = 2 * theta - 4 / denom;
    Ok(rest_q - (n as i64 - 1) + theta_star)
}

/// Which rule produced a classified length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum LengthRule {
    LocalTable,
    PathOfLengthTwo,
    RadicalOverZ2Z2,
    SmallCaseThree,
    SmallCaseFour,
    Z2PlusLargeField,
    /// Closed form minimised over the distinguished index; `d` is 1-based.
    ClosedFormMinimum { d: usize },
    EqualsCycleLength,
}

impl LengthRule {
    pub fn is_heuristic(self) -> bool {
        matches!(self, LengthRule::ClosedFormMinimum { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classified {
    pub value: LengthValue,
    #[serde(flatten)]
    pub rule: LengthRule,
}

pub fn lc_classified(ring: &ProductRing) -> LengthValue {
    lc_classified_detail(ring).value
}

pub fn lp_classified(ring: &ProductRing) -> LengthValue {
    lp_classified_detail(ring).value
}

pub fn lc_classified_detail(ring: &ProductRing) -> Classified {
    let done = |value, rule| Classified { value, rule };
    if ring.is_local() {
        return done(lc_local(ring).expect("local"), LengthRule::LocalTable);
    }
    let shape = quotient_shape(ring);
    let semisimple = ring.is_semisimple();
    if shape == [2, 2] {
        return if semisimple {
            done(LengthValue::NoCycle, LengthRule::PathOfLengthTwo)
        } else {
            done(LengthValue::Finite(3), LengthRule::RadicalOverZ2Z2)
        };
    }
    if shape == [2, 3] || shape == [2, 2, 2] {
        return done(LengthValue::Finite(3), LengthRule::SmallCaseThree);
    }
    let z2_plus_big = shape.len() == 2 && shape[0] == 2 && shape[1] >= 4;
    if z2_plus_big || shape == [3, 3] || shape == [2, 2, 3] || shape == [2, 2, 2, 2] {
        return done(LengthValue::Finite(4), LengthRule::SmallCaseFour);
    }
    let (d, value) = (1..=ring.n())
        .map(|d| (d, lc_closed_form(ring, d).expect("non-local")))
        .min_by_key(|&(d, v)| (v, d))
        .expect("n >= 2");
    done(
        LengthValue::Finite(value.max(0) as u64),
        LengthRule::ClosedFormMinimum { d },
    )
}

pub fn lp_classified_detail(ring: &ProductRing) -> Classified {
    if ring.is_local() {
        return Classified {
            value: lp_local(ring).expect("local"),
            rule: LengthRule::LocalTable,
        };
    }
    let shape = quotient_shape(ring);
    if ring.is_semisimple() && shape == [2, 2] {
        return Classified {
            value: LengthValue::Finite(2),
            rule: LengthRule::PathOfLengthTwo,
        };
    }
    if shape.len() == 2 && shape[0] == 2 && shape[1] >= 7 {
        return Classified {
            value: LengthValue::Finite(5),
            rule: LengthRule::Z2PlusLargeField,
        };
    }
    let lc = lc_classified_detail(ring);
    Classified {
        value: lc.value,
        rule: match lc.rule {
            r @ LengthRule::ClosedFormMinimum { .. } => r,
            _ => LengthRule::EqualsCycleLength,
        },
    }
}

/// Every closed-form verdict for one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub spec: String,
    pub order: u64,
    pub radical: u64,
    pub n_factors: usize,
    pub vertices: u64,
    pub local: bool,
    pub residue_fields: Vec<u64>,
    pub hamiltonian: HamStatus,
    pub pancyclic: bool,
    pub eulerian: bool,
    pub euler_trail: bool,
    pub lc: Classified,
    pub lp: Classified,
    pub edges_formula: String,
}

pub fn classify(ring: &ProductRing) -> Classification {
    Classification {
        spec: crate::ring_spec::format(ring),
        order: ring.size(),
        radical: ring.radical_size(),
        n_factors: ring.n(),
        vertices: ring.vertex_count(),
        local: ring.is_local(),
        residue_fields: ring.residue_field_sizes().into_iter().map(u64::from).collect(),
        hamiltonian: thm_hamiltonian(ring),
        pancyclic: thm_pancyclic(ring),
        eulerian: thm_eulerian(ring),
        euler_trail: thm_euler_trail(ring),
        lc: lc_classified_detail(ring),
        lp: lp_classified_detail(ring),
        edges_formula: crate::jgraph::edge_count_closed_form(ring).render(),
    }
}
