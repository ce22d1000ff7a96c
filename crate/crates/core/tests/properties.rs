//! Structural invariants, checked exhaustively over small catalog rings and
//! by property-based sampling over larger ones.

use std::sync::OnceLock;

use proptest::prelude::*;

use jacobson::constructions::{blowup_lift, check_elements, construct_hamiltonian, figure1_compose, ElementWalk};
use jacobson::jgraph::{self, adjacent};
use jacobson::oracles::{self, EulerOutcome, SearchBudget, WalkKind};
use jacobson::survey::{catalog, CatalogFilter};
use jacobson::theorems::{self, FieldStats, HamStatus, LengthValue};
use jacobson::{format, parse, JacobsonGraph, LocalRing, ProductRing, RingElement};

fn rings_up_to(max_order: u64) -> Vec<ProductRing> {
    catalog(&CatalogFilter::new(max_order))
}

fn rings_512() -> &'static [ProductRing] {
    static RINGS: OnceLock<Vec<ProductRing>> = OnceLock::new();
    RINGS.get_or_init(|| rings_up_to(512))
}

fn radical(ring: &ProductRing) -> Vec<RingElement> {
    ring.coset(&ring.semisimplify().zero())
}

#[test]
fn local_arithmetic_laws_exhaustive() {
    for ring in rings_up_to(32).iter().filter(|r| r.is_local()) {
        let f = ring.factor(0);
        let n = f.size();
        for a in 0..n {
            assert_eq!(f.add(a, f.neg(a)), 0);
            for b in 0..n {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..n {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)), "{f:?}");
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)), "{f:?}");
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)), "{f:?}");
                }
            }
        }
    }
}

#[test]
fn unit_count_matches_residue_field() {
    for ring in rings_up_to(256).iter().filter(|r| r.is_local()) {
        let f = ring.factor(0);
        let units = (0..f.size()).filter(|&a| f.is_unit(a)).count() as u32;
        assert_eq!(units * f.residue_field_size(), f.size() * (f.residue_field_size() - 1), "{f:?}");
        for a in 0..f.size() {
            assert_eq!(f.is_unit(a), f.residue_class(a) != 0);
        }
    }
}

#[test]
fn vertices_are_non_radical_elements() {
    for ring in rings_up_to(4096) {
        let count = ring.elements().filter(|x| !ring.in_radical(x)).count() as u64;
        assert_eq!(count, ring.vertex_count(), "{}", format(&ring));
        assert_eq!(count, ring.size() - ring.radical_size());
    }
}

#[test]
fn semisimplify_is_idempotent() {
    for ring in rings_up_to(256) {
        let s = ring.semisimplify();
        assert_eq!(s.semisimplify(), s, "{}", format(&ring));
        assert!(s.is_semisimple());
    }
}

#[test]
fn coset_invariance_exhaustive() {
    for ring in rings_up_to(64) {
        let rad = radical(&ring);
        let vertices: Vec<RingElement> = ring.elements().filter(|x| ring.is_vertex(x)).collect();
        for x in &vertices {
            for y in &vertices {
                if x == y {
                    continue;
                }
                let base = adjacent(&ring, x, y).unwrap();
                for j in &rad {
                    for k in &rad {
                        let (xj, yk) = (ring.add(x, j), ring.add(y, k));
                        if xj != yk {
                            assert_eq!(adjacent(&ring, &xj, &yk).unwrap(), base, "{} {x} {y}", format(&ring));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn closed_forms_exact_over_z2_z3_residue_fields() {
    for ring in rings_up_to(128) {
        if !ring.residue_field_sizes().iter().all(|&q| q <= 3) {
            continue;
        }
        let g = JacobsonGraph::build(&ring).unwrap();
        for (u, x) in g.vertices().iter().enumerate() {
            assert_eq!(jgraph::degree_closed_form(&ring, x).unwrap(), g.degree_oracle(u) as i64, "{} {x}", format(&ring));
        }
        let e = jgraph::edge_count_closed_form(&ring);
        assert!(e.is_integer());
        assert_eq!(*e.edges.numer(), g.edge_count_oracle() as i128, "{}", format(&ring));
    }
}

#[test]
fn girth_is_three_for_non_local_rings() {
    for ring in rings_up_to(128).iter().filter(|r| !r.is_local()) {
        let g = JacobsonGraph::build(ring).unwrap();
        let want = if format(ring) == "Z2 x Z2" { LengthValue::NoCycle } else { LengthValue::Finite(3) };
        assert_eq!(oracles::girth(&g), want, "{}", format(ring));
    }
}

#[test]
fn field_stats_match_one_factor_graphs() {
    for ring in rings_up_to(32).iter().filter(|r| r.is_semisimple() && r.is_local()) {
        let q = ring.size();
        let g = JacobsonGraph::build(ring).unwrap();
        let comps = oracles::components(&g);
        let stats = FieldStats::new(q);
        assert_eq!(stats.components, comps.len() as u64, "GF({q})");
        assert_eq!(stats.bipartite_components, comps.iter().filter(|c| c.len() == 2).count() as u64, "GF({q})");
    }
}

#[test]
fn eulerian_oracle_matches_degree_parity() {
    for ring in rings_up_to(128) {
        let g = JacobsonGraph::build(&ring).unwrap();
        let odd = (0..g.vertex_count()).filter(|&u| g.degree_oracle(u) % 2 == 1).count();
        let connected = oracles::is_connected(&g);
        let want = match (connected, odd) {
            (true, 0) => "tour",
            (true, 2) => "trail",
            _ => "neither",
        };
        let outcome = oracles::eulerian(&g);
        assert_eq!(outcome.as_str(), want, "{}", format(&ring));
        if let EulerOutcome::Tour(w) | EulerOutcome::Trail(w) = &outcome {
            oracles::validate_eulerian(&g, w).unwrap();
        }
    }
}

/// The theorem-side Eulerian predicates against the classical Euler
/// condition on every catalog ring of order at most 128.
#[test]
fn eulerian_theorems_match_euler_condition() {
    let mut mismatches = Vec::new();
    for ring in rings_up_to(128) {
        let g = JacobsonGraph::build(&ring).unwrap();
        let outcome = oracles::eulerian(&g).as_str();
        let tour = theorems::thm_eulerian(&ring);
        let trail = !tour && theorems::thm_euler_trail(&ring);
        if (outcome == "tour") != tour || (outcome == "trail") != trail {
            mismatches.push(format!("{}: oracle {outcome}, theorem tour={tour} trail={trail}", format(&ring)));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn hamiltonian_theorem_matches_oracle() {
    let budget = SearchBudget::with_vertex_limit(24);
    for ring in rings_up_to(48).iter().filter(|r| !r.is_local() && r.vertex_count() <= 24) {
        let g = JacobsonGraph::build(ring).unwrap();
        let h = oracles::hamiltonian_status(&g, &budget).unwrap();
        assert_eq!(h.status, theorems::thm_hamiltonian(ring), "{}", format(ring));
        if let Some(w) = &h.witness {
            oracles::validate_walk(&g, w).unwrap();
            oracles::validate_spanning(&g, w).unwrap();
        }
    }
}

/// `thm_pancyclic` against the oracle on every catalog ring with at most 16
/// vertices, local rings included.
#[test]
fn pancyclic_theorem_matches_oracle() {
    let budget = SearchBudget::with_vertex_limit(16);
    let mut mismatches = Vec::new();
    for ring in rings_up_to(32).iter().filter(|r| r.vertex_count() <= 16) {
        let g = JacobsonGraph::build(ring).unwrap();
        let p = oracles::pancyclic_check(&g, &budget).unwrap();
        for w in &p.witnesses {
            oracles::validate_walk(&g, w).unwrap();
        }
        if p.pancyclic != theorems::thm_pancyclic(ring) {
            mismatches.push(format!("{}: oracle {}, theorem {}", format(ring), p.pancyclic, theorems::thm_pancyclic(ring)));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn oracle_witnesses_validate_and_are_deterministic() {
    let budget = SearchBudget::default();
    for ring in rings_up_to(24).iter().filter(|r| r.vertex_count() <= 16) {
        let g = JacobsonGraph::build(ring).unwrap();
        for run in [oracles::longest_induced_cycle, oracles::longest_induced_path] {
            let a = run(&g, &budget).unwrap();
            let b = run(&g, &budget).unwrap();
            assert_eq!(a, b);
            if let Some(w) = &a.witness {
                oracles::validate_walk(&g, w).unwrap();
                oracles::validate_induced(&g, w).unwrap();
                assert_eq!(LengthValue::Finite(w.length() as u64), a.length);
            }
        }
    }
}

#[test]
fn construction_succeeds_exactly_when_predicted() {
    for ring in rings_up_to(256) {
        let predicted = theorems::thm_hamiltonian(&ring);
        match construct_hamiltonian(&ring) {
            Ok(t) => {
                assert_ne!(predicted, HamStatus::Neither, "{}", format(&ring));
                let kind = if predicted == HamStatus::HamiltonianCycle { WalkKind::Cycle } else { WalkKind::Path };
                assert_eq!(t.walk.kind, kind);
                check_elements(&ring, &t.walk, true).unwrap();
            }
            Err(e) => assert_eq!(predicted, HamStatus::Neither, "{}: {e}", format(&ring)),
        }
    }
}

#[test]
fn composition_vertex_count_identity() {
    for ring in rings_up_to(64).iter().filter(|r| r.is_semisimple() && r.n() >= 2 && theorems::thm_hamiltonian(r) == HamStatus::HamiltonianCycle) {
        let fields = ring.factors();
        let s = ProductRing::new(fields[..fields.len() - 1].to_vec()).unwrap();
        if theorems::thm_hamiltonian(&s) != HamStatus::HamiltonianCycle || s.is_local() {
            continue;
        }
        let base = construct_hamiltonian(&s).unwrap();
        let f: &LocalRing = &fields[fields.len() - 1];
        let out = figure1_compose(&s, &base.walk.elements, f).unwrap();
        assert_eq!(out.len() as u64, s.size() * f.size() as u64 - 1, "{}", format(ring));
        check_elements(ring, &ElementWalk::new(WalkKind::Cycle, out), true).unwrap();
    }
}

#[test]
fn blowup_lift_projects_onto_quotient_cycle() {
    for ring in rings_up_to(256).iter().filter(|r| !r.is_semisimple() && !r.is_local()) {
        let quotient = construct_hamiltonian(&ring.semisimplify()).unwrap();
        if quotient.walk.kind != WalkKind::Cycle {
            continue;
        }
        let lifted = blowup_lift(ring, &quotient.walk).unwrap();
        let mut projected: Vec<RingElement> = lifted.elements.iter().map(|x| ring.project(x)).collect();
        projected.dedup();
        while projected.len() > 1 && projected.first() == projected.last() {
            projected.pop();
        }
        let mut classes = projected.clone();
        classes.sort();
        classes.dedup();
        assert_eq!(classes.len() as u64, ring.semisimplify().vertex_count(), "{}", format(ring));
        let q = ring.semisimplify();
        let n = projected.len();
        for i in 0..n {
            assert!(adjacent(&q, &projected[i], &projected[(i + 1) % n]).unwrap(), "{}", format(ring));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corrected_degree_matches_oracle(i in 0usize..4096, pick in 0usize..1 << 20) {
        let rings = rings_512();
        let ring = &rings[i % rings.len()];
        let g = JacobsonGraph::build(ring).unwrap();
        let u = pick % g.vertex_count();
        prop_assert_eq!(jgraph::degree_corrected_form(ring, g.vertex(u)).unwrap(), g.degree_oracle(u) as i64);
    }

    #[test]
    fn adjacency_is_coset_invariant(i in 0usize..4096, a in any::<u64>(), b in any::<u64>(), j in any::<u64>(), k in any::<u64>()) {
        let rings = rings_512();
        let ring = &rings[i % rings.len()];
        let vertices: Vec<RingElement> = ring.elements().filter(|x| ring.is_vertex(x)).collect();
        let rad = radical(ring);
        let x = &vertices[(a % vertices.len() as u64) as usize];
        let y = &vertices[(b % vertices.len() as u64) as usize];
        let xj = ring.add(x, &rad[(j % rad.len() as u64) as usize]);
        let yk = ring.add(y, &rad[(k % rad.len() as u64) as usize]);
        prop_assume!(x != y && xj != yk);
        prop_assert_eq!(adjacent(ring, x, y).unwrap(), adjacent(ring, &xj, &yk).unwrap());
    }

    #[test]
    fn parse_never_panics(text in "\\PC{0,24}") {
        let _ = parse(&text);
    }

    #[test]
    fn parse_errors_point_inside_the_input(text in "[ZGF()\\[\\]x^*0-9 ]{0,16}") {
        if let Err(jacobson::Error::Parse(e)) = parse(&text) {
            prop_assert!(e.offset <= text.len());
        }
    }

    #[test]
    fn catalog_specs_round_trip(i in 0usize..4096) {
        let rings = rings_512();
        let ring = &rings[i % rings.len()];
        let text = format(ring);
        prop_assert_eq!(&parse(&text).unwrap(), ring);
    }
}
