//! Formula-versus-oracle verification and catalog surveys.

use std::io::Write;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::jgraph::{self, JacobsonGraph, DEFAULT_VERTEX_LIMIT};
use crate::local_ring::{LocalKind, LocalRing};
use crate::numtheory::{checked_pow, is_prime};
use crate::oracles::{self, Exceeded, SearchBudget};
use crate::product_ring::ProductRing;
use crate::ring_spec;
use crate::theorems::{self, Classified, HamStatus, LengthValue};

/// An oracle answer, or why there is none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleValue<T> {
    Exact(T),
    BudgetExceeded(String),
    Skipped(String),
}

impl<T> OracleValue<T> {
    pub fn exact(&self) -> Option<&T> {
        match self {
            OracleValue::Exact(v) => Some(v),
            _ => None,
        }
    }

    fn from_search(r: std::result::Result<T, Exceeded>) -> Self {
        match r {
            Ok(v) => OracleValue::Exact(v),
            Err(e @ Exceeded::VertexLimit { .. }) => OracleValue::Skipped(e.to_string()),
            Err(e @ Exceeded::TimeLimit { .. }) => OracleValue::BudgetExceeded(e.to_string()),
        }
    }

    fn map<U>(self, f: impl FnOnce(T) -> U) -> OracleValue<U> {
        match self {
            OracleValue::Exact(v) => OracleValue::Exact(f(v)),
            OracleValue::BudgetExceeded(s) => OracleValue::BudgetExceeded(s),
            OracleValue::Skipped(s) => OracleValue::Skipped(s),
        }
    }

    /// CSV cell: the value, `budget` or `skipped`.
    fn cell(&self, render: impl FnOnce(&T) -> String) -> String {
        match self {
            OracleValue::Exact(v) => render(v),
            OracleValue::BudgetExceeded(_) => "budget".into(),
            OracleValue::Skipped(_) => "skipped".into(),
        }
    }
}

impl<T: Serialize> Serialize for OracleValue<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(2))?;
        match self {
            OracleValue::Exact(v) => {
                m.serialize_entry("status", "Exact")?;
                m.serialize_entry("value", v)?;
            }
            OracleValue::BudgetExceeded(why) => {
                m.serialize_entry("status", "BudgetExceeded")?;
                m.serialize_entry("reason", why)?;
            }
            OracleValue::Skipped(why) => {
                m.serialize_entry("status", "Skipped")?;
                m.serialize_entry("reason", why)?;
            }
        }
        m.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EulerStatus {
    Tour,
    Trail,
    Neither,
}

impl EulerStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            EulerStatus::Tour => "tour",
            EulerStatus::Trail => "trail",
            EulerStatus::Neither => "neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaValues {
    pub edges: String,
    pub edges_integral: bool,
    pub hamiltonian: HamStatus,
    pub euler: EulerStatus,
    pub pancyclic: bool,
    pub lc: Classified,
    pub lp: Classified,
    /// The raw induced-cycle formula for each distinguished index `d = 1..n`;
    /// empty for local rings and `Z2 ⊕ Z2`.
    pub lc_closed_form: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleValues {
    pub edges: OracleValue<u64>,
    /// Vertices whose closed-form degree differs from the true degree.
    pub degree_mismatches: OracleValue<u64>,
    /// Vertices whose corrected closed-form degree differs from the true degree.
    pub corrected_degree_mismatches: OracleValue<u64>,
    pub components: OracleValue<u64>,
    pub girth: OracleValue<LengthValue>,
    pub hamiltonian: OracleValue<HamStatus>,
    pub euler: OracleValue<EulerStatus>,
    pub pancyclic: OracleValue<bool>,
    pub lc: OracleValue<LengthValue>,
    pub lp: OracleValue<LengthValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub spec: String,
    pub order: u64,
    pub radical: u64,
    pub vertices: u64,
    pub factors: Vec<String>,
    pub formulas: FormulaValues,
    pub oracles: Option<OracleValues>,
    pub flags: Vec<String>,
}

impl VerificationReport {
    pub fn has_discrepancy(&self) -> bool {
        !self.flags.is_empty()
    }
}

fn formulas(ring: &ProductRing) -> FormulaValues {
    let edges = jgraph::edge_count_closed_form(ring);
    let euler = if theorems::thm_eulerian(ring) {
        EulerStatus::Tour
    } else if theorems::thm_euler_trail(ring) {
        EulerStatus::Trail
    } else {
        EulerStatus::Neither
    };
    let shape = {
        let mut q = ring.residue_field_sizes();
        q.sort_unstable();
        q
    };
    let lc_closed_form = if ring.is_local() || (ring.is_semisimple() && shape == [2, 2]) {
        Vec::new()
    } else {
        (1..=ring.n())
            .map(|d| theorems::lc_closed_form(ring, d).expect("non-local"))
            .collect()
    };
    FormulaValues {
        edges: edges.render(),
        edges_integral: edges.is_integer(),
        hamiltonian: theorems::thm_hamiltonian(ring),
        euler,
        pancyclic: theorems::thm_pancyclic(ring),
        lc: theorems::lc_classified_detail(ring),
        lp: theorems::lp_classified_detail(ring),
        lc_closed_form,
    }
}

/// Formula values only; no graph is built.
pub fn classify_report(ring: &ProductRing) -> VerificationReport {
    report(ring, formulas(ring), None)
}

fn report(ring: &ProductRing, formulas: FormulaValues, oracles: Option<OracleValues>) -> VerificationReport {
    let flags = oracles
        .as_ref()
        .map(|o| discrepancies(&formulas, o))
        .unwrap_or_default();
    VerificationReport {
        spec: ring_spec::format(ring),
        order: ring.size(),
        radical: ring.radical_size(),
        vertices: ring.vertex_count(),
        factors: ring
            .factors()
            .iter()
            .map(|f| ring_spec::format_local(f.kind()))
            .collect(),
        formulas,
        oracles,
        flags,
    }
}

fn run_oracles(ring: &ProductRing, budget: &SearchBudget) -> OracleValues {
    let g = match JacobsonGraph::build_with_limit(ring, DEFAULT_VERTEX_LIMIT) {
        Ok(g) => g,
        Err(e) => {
            fn skip<T>(why: &str) -> OracleValue<T> {
                OracleValue::Skipped(why.to_string())
            }
            let why = e.to_string();
            return OracleValues {
                edges: skip(&why),
                degree_mismatches: skip(&why),
                corrected_degree_mismatches: skip(&why),
                components: skip(&why),
                girth: skip(&why),
                hamiltonian: skip(&why),
                euler: skip(&why),
                pancyclic: skip(&why),
                lc: skip(&why),
                lp: skip(&why),
            };
        }
    };
    let (mut paper, mut corrected) = (0u64, 0u64);
    for (u, x) in g.vertices().iter().enumerate() {
        let truth = g.degree_oracle(u) as i64;
        paper += u64::from(jgraph::degree_closed_form(ring, x).expect("vertex") != truth);
        corrected += u64::from(jgraph::degree_corrected_form(ring, x).expect("vertex") != truth);
    }
    let euler = match oracles::eulerian(&g) {
        oracles::EulerOutcome::Tour(_) => EulerStatus::Tour,
        oracles::EulerOutcome::Trail(_) => EulerStatus::Trail,
        oracles::EulerOutcome::Neither => EulerStatus::Neither,
    };
    OracleValues {
        edges: OracleValue::Exact(g.edge_count_oracle() as u64),
        degree_mismatches: OracleValue::Exact(paper),
        corrected_degree_mismatches: OracleValue::Exact(corrected),
        components: OracleValue::Exact(oracles::components(&g).len() as u64),
        girth: OracleValue::Exact(oracles::girth(&g)),
        hamiltonian: OracleValue::from_search(oracles::hamiltonian_status(&g, budget)).map(|h| h.status),
        euler: OracleValue::Exact(euler),
        pancyclic: OracleValue::from_search(oracles::pancyclic_check(&g, budget)).map(|p| p.pancyclic),
        lc: OracleValue::from_search(oracles::longest_induced_cycle(&g, budget)).map(|l| l.length),
        lp: OracleValue::from_search(oracles::longest_induced_path(&g, budget)).map(|l| l.length),
    }
}

/// Flag names, in a fixed order, for every comparison whose two sides are
/// both exact and disagree.
fn discrepancies(f: &FormulaValues, o: &OracleValues) -> Vec<String> {
    let mut flags = Vec::new();
    let mut flag = |name: &str, differs: Option<bool>| {
        if differs == Some(true) {
            flags.push(name.to_string());
        }
    };
    flag("edges", o.edges.exact().map(|&e| !f.edges_integral || f.edges != e.to_string()));
    flag("degree", o.degree_mismatches.exact().map(|&m| m > 0));
    flag("degree_corrected", o.corrected_degree_mismatches.exact().map(|&m| m > 0));
    flag("ham", o.hamiltonian.exact().map(|&h| h != f.hamiltonian));
    flag("euler", o.euler.exact().map(|&e| e != f.euler));
    flag("pancyclic", o.pancyclic.exact().map(|&p| p != f.pancyclic));
    flag("lc", o.lc.exact().map(|&l| l != f.lc.value));
    flag("lp", o.lp.exact().map(|&l| l != f.lp.value));
    let raw_min = f.lc_closed_form.iter().min().copied();
    flag(
        "lc_closed_form",
        o.lc.exact().zip(raw_min).map(|(&l, m)| l != LengthValue::Finite(m.max(0) as u64)),
    );
    flags
}

/// Formula values plus every oracle that fits the budget.
pub fn verify(ring: &ProductRing, budget: &SearchBudget) -> VerificationReport {
    let oracles = run_oracles(ring, budget);
    report(ring, formulas(ring), Some(oracles))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FactorKind {
    IntegerMod,
    Galois,
    Truncated,
}

impl FactorKind {
    fn of(kind: LocalKind) -> Self {
        match kind {
            LocalKind::IntegerModPrimePower { .. } => FactorKind::IntegerMod,
            LocalKind::GaloisField { .. } => FactorKind::Galois,
            LocalKind::TruncatedPoly { .. } => FactorKind::Truncated,
        }
    }
}

impl std::str::FromStr for FactorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "z" | "integer" => Ok(FactorKind::IntegerMod),
            "gf" | "galois" => Ok(FactorKind::Galois),
            "truncated" | "poly" => Ok(FactorKind::Truncated),
            other => Err(format!("unknown factor kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogFilter {
    pub max_order: u64,
    pub include_local: bool,
    /// Allowed factor kinds; empty allows all.
    pub kinds: Vec<FactorKind>,
}

impl CatalogFilter {
    pub fn new(max_order: u64) -> Self {
        CatalogFilter {
            max_order,
            include_local: true,
            kinds: Vec::new(),
        }
    }
}

/// Local rings of order at most `max_order`: `Z/p^k`, `GF(p^k)` for `k >= 2`
/// and `GF(q)[x]/(x^m)` for `m >= 2`, sorted by (order, text).
pub fn local_catalog(max_order: u64, kinds: &[FactorKind]) -> Vec<LocalRing> {
    let mut out = Vec::new();
    let allowed = |k: LocalKind| kinds.is_empty() || kinds.contains(&FactorKind::of(k));
    let mut push = |k: LocalKind| {
        if allowed(k) {
            if let Ok(r) = LocalRing::new(k) {
                out.push(r);
            }
        }
    };
    for p in (2..=max_order.min(u32::MAX as u64)).filter(|&p| is_prime(p)) {
        let p32 = p as u32;
        let mut k = 1;
        while let Some(q) = checked_pow(p, k).filter(|&q| q <= max_order) {
            push(LocalKind::IntegerModPrimePower { p: p32, k });
            if k >= 2 {
                push(LocalKind::GaloisField { p: p32, k });
            }
            let mut m = 2;
            while checked_pow(q, m).is_some_and(|s| s <= max_order) {
                push(LocalKind::TruncatedPoly { q: q as u32, m });
                m += 1;
            }
            k += 1;
        }
    }
    out.sort_by_key(|r| (r.size(), ring_spec::format_local(r.kind())));
    out
}

/// Text of the ring with its factors in ascending (order, text) order, so
/// isomorphic products written in different orders share one key.
pub fn canonical_spec(ring: &ProductRing) -> String {
    let mut names: Vec<(u32, String)> = ring
        .factors()
        .iter()
        .map(|f| (f.size(), ring_spec::format_local(f.kind())))
        .collect();
    names.sort();
    names.into_iter().map(|(_, n)| n).collect::<Vec<_>>().join(" x ")
}

/// Every product of catalog local rings passing the filter, factors in
/// ascending catalog order, sorted by (order, text).
pub fn catalog(filter: &CatalogFilter) -> Vec<ProductRing> {
    let locals = local_catalog(filter.max_order, &filter.kinds);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn walk(
        locals: &[LocalRing],
        from: usize,
        order: u64,
        max: u64,
        stack: &mut Vec<usize>,
        out: &mut Vec<ProductRing>,
    ) {
        for i in from..locals.len() {
            let next = order * locals[i].size() as u64;
            if next > max {
                continue;
            }
            stack.push(i);
            out.push(
                ProductRing::new(stack.iter().map(|&j| locals[j].clone()).collect())
                    .expect("bounded order"),
            );
            walk(locals, i, next, max, stack, out);
            stack.pop();
        }
    }
    walk(&locals, 0, 1, filter.max_order, &mut stack, &mut out);
    out.retain(|r| filter.include_local || !r.is_local());
    out.sort_by_cached_key(|r| (r.size(), canonical_spec(r)));
    out.dedup_by_key(|r| canonical_spec(r));
    out
}

pub const CSV_HEADER: [&str; 20] = [
    "spec",
    "order",
    "radical",
    "n_factors",
    "vertices",
    "edges_formula",
    "edges_oracle",
    "ham_thm",
    "ham_oracle",
    "euler_thm",
    "euler_oracle",
    "trail_thm",
    "trail_oracle",
    "pancyclic_thm",
    "pancyclic_oracle",
    "lc_formula",
    "lc_oracle",
    "lp_formula",
    "lp_oracle",
    "flags",
];

fn csv_row(r: &VerificationReport) -> Vec<String> {
    let f = &r.formulas;
    let o = r.oracles.as_ref().expect("survey rows carry oracle values");
    let euler_oracle = o.euler.clone().map(|e| e == EulerStatus::Tour);
    let trail_oracle = o.euler.clone().map(|e| e == EulerStatus::Trail);
    vec![
        r.spec.clone(),
        r.order.to_string(),
        r.radical.to_string(),
        r.factors.len().to_string(),
        r.vertices.to_string(),
        f.edges.clone(),
        o.edges.cell(u64::to_string),
        f.hamiltonian.as_str().into(),
        o.hamiltonian.cell(|h| h.as_str().into()),
        (f.euler == EulerStatus::Tour).to_string(),
        euler_oracle.cell(bool::to_string),
        (f.euler == EulerStatus::Trail).to_string(),
        trail_oracle.cell(bool::to_string),
        f.pancyclic.to_string(),
        o.pancyclic.cell(bool::to_string),
        f.lc.value.to_string(),
        o.lc.cell(LengthValue::to_string),
        f.lp.value.to_string(),
        o.lp.cell(LengthValue::to_string),
        r.flags.join(";"),
    ]
}

/// Verification reports for the whole filtered catalog, in catalog order.
pub fn survey(filter: &CatalogFilter, budget: &SearchBudget) -> Vec<VerificationReport> {
    catalog(filter)
        .par_iter()
        .map(|r| verify(r, budget))
        .collect()
}

pub fn write_csv<W: Write>(reports: &[VerificationReport], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let io = |e: csv::Error| crate::error::Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in reports {
        w.write_record(csv_row(r)).map_err(io)?;
    }
    w.flush().map_err(|e| crate::error::Error::Io(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_spec::parse;

    fn specs(filter: &CatalogFilter) -> Vec<String> {
        catalog(filter).iter().map(ring_spec::format).collect()
    }

    #[test]
    fn local_catalog_small() {
        let names: Vec<String> = local_catalog(9, &[])
            .iter()
            .map(|r| ring_spec::format_local(r.kind()))
            .collect();
        assert_eq!(
            names,
            vec!["Z2", "Z3", "GF(2)[x]/(x^2)", "GF(4)", "Z4", "Z5", "Z7", "GF(2)[x]/(x^3)", "GF(8)", "Z8", "GF(3)[x]/(x^2)", "GF(9)", "Z9"]
        );
    }

    #[test]
    fn catalog_order_16_contains_expected_rings() {
        let all = specs(&CatalogFilter::new(16));
        for s in ["Z2", "Z4", "Z2xZ2", "Z6", "Z8", "Z9", "Z10", "Z12", "GF(4)", "GF(4)xZ2", "GF(16)", "Z2xZ2xZ2xZ2"] {
            let key = canonical_spec(&parse(s).unwrap());
            assert!(all.contains(&key), "{s}");
        }
        assert_eq!(canonical_spec(&parse("GF(4)xZ2").unwrap()), "Z2 x GF(4)");
        assert_eq!(canonical_spec(&parse("Z12").unwrap()), "Z3 x Z4");
        let rings = catalog(&CatalogFilter::new(16));
        assert!(rings.windows(2).all(|w| (w[0].size(), ring_spec::format(&w[0])) < (w[1].size(), ring_spec::format(&w[1]))));
    }

    #[test]
    fn non_local_catalog_order_9() {
        let f = CatalogFilter { max_order: 9, include_local: false, kinds: vec![] };
        assert_eq!(
            specs(&f),
            vec!["Z2 x Z2", "Z2 x Z3", "Z2 x GF(2)[x]/(x^2)", "Z2 x GF(4)", "Z2 x Z2 x Z2", "Z2 x Z4", "Z3 x Z3"]
        );
    }

    #[test]
    fn kind_whitelist_and_empty_intersection() {
        let f = CatalogFilter { max_order: 8, include_local: true, kinds: vec![FactorKind::Galois] };
        assert_eq!(specs(&f), vec!["GF(4)", "GF(8)"]);
        let f = CatalogFilter { max_order: 1, include_local: true, kinds: vec![] };
        assert!(catalog(&f).is_empty());
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn verify_examples() {
        let b = SearchBudget::default();
        let r = verify(&parse("Z2 x Z5").unwrap(), &b);
        assert!(r.flags.contains(&"edges".to_string()));
        assert!(r.flags.contains(&"lc_closed_form".to_string()));
        assert!(!r.flags.contains(&"lc".to_string()));
        assert!(r.has_discrepancy());
        let r = verify(&parse("Z3 x Z3").unwrap(), &b);
        assert_eq!(r.flags, Vec::<String>::new());
        let o = r.oracles.as_ref().unwrap();
        assert_eq!(o.lc, OracleValue::Exact(LengthValue::Finite(4)));
        let r = verify(&parse("Z2 x Z2").unwrap(), &b);
        assert_eq!(r.flags, Vec::<String>::new());
        let o = r.oracles.as_ref().unwrap();
        assert_eq!(o.hamiltonian, OracleValue::Exact(HamStatus::HamiltonianPathOnly));
        assert_eq!(o.lp, OracleValue::Exact(LengthValue::Finite(2)));
    }

    #[test]
    fn skipped_is_not_a_discrepancy() {
        let b = SearchBudget::with_vertex_limit(4);
        let r = verify(&parse("Z3 x Z3").unwrap(), &b);
        let o = r.oracles.as_ref().unwrap();
        assert!(matches!(o.hamiltonian, OracleValue::Skipped(_)));
        assert!(matches!(o.edges, OracleValue::Exact(12)));
        assert!(r.flags.is_empty());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["oracles"]["hamiltonian"]["status"], "Skipped");
        assert_eq!(json["oracles"]["edges"]["value"], 12);
    }

    #[test]
    fn csv_is_deterministic() {
        let f = CatalogFilter::new(12);
        let b = SearchBudget::default();
        let render = || {
            let mut buf = Vec::new();
            write_csv(&survey(&f, &b), &mut buf).unwrap();
            String::from_utf8(buf).unwrap()
        };
        let a = render();
        assert_eq!(a, render());
        let row = a.lines().find(|l| l.starts_with("Z2 x Z5,")).unwrap();
        assert_eq!(
            row,
            "Z2 x Z5,10,1,2,9,16,15,path,path,false,false,false,false,false,false,4,4,4,4,edges;degree;lc_closed_form"
        );
        assert!(!a.contains('\r'));
    }
}
