//! Explicit Hamiltonian cycles and paths, built from the ring structure
//! rather than found by search.
//!
//! Semisimple rings are handled by a base case on two or three factors
//! (a grid of two fields, or a field times `Z2 ⊕ Z2`) followed by repeated
//! composition with one more field. Rings with a non-zero radical lift a cycle
//! of `R/J(R)` through the cosets of `J(R)`, except over `Z2 ⊕ F`, where the
//! quotient has only a path and a detour schedule through the clique
//! `(1, *) + J(R)` is used instead.
//!
//! Every public builder checks its output against the adjacency definition
//! before returning it.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jgraph::{adjacent, JacobsonGraph};
use crate::local_ring::{Code, LocalRing};
use crate::oracles::{self, SearchBudget, Walk, WalkKind};
use crate::product_ring::{ProductRing, RingElement};
use crate::ring_spec;
use crate::theorems::{thm_hamiltonian, thm_pancyclic, HamStatus};

/// A walk written as ring elements, independent of any vertex numbering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementWalk {
    pub kind: WalkKind,
    pub elements: Vec<RingElement>,
}

impl ElementWalk {
    pub fn new(kind: WalkKind, elements: Vec<RingElement>) -> Self {
        ElementWalk { kind, elements }
    }

    pub fn length(&self) -> usize {
        match self.kind {
            WalkKind::Cycle => self.elements.len(),
            _ => self.elements.len().saturating_sub(1),
        }
    }

    /// Vertex ids in `g`; fails if an element is not a vertex of `g`.
    pub fn to_walk(&self, g: &JacobsonGraph) -> Result<Walk> {
        let ids = self
            .elements
            .iter()
            .map(|x| {
                g.id_of(x)
                    .ok_or_else(|| Error::InvalidWalk(format!("{x} is not a vertex")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Walk::new(self.kind, ids))
    }

    pub fn from_walk(g: &JacobsonGraph, w: &Walk) -> Self {
        ElementWalk {
            kind: w.kind,
            elements: w.vertices.iter().map(|&v| g.vertex(v).clone()).collect(),
        }
    }
}

/// Checks a cycle or path of ring elements straight from the adjacency rule,
/// without building the graph. With `spanning`, every vertex must appear.
pub fn check_elements(ring: &ProductRing, walk: &ElementWalk, spanning: bool) -> Result<()> {
    let fail = |msg: String| Err(Error::InvalidWalk(msg));
    let xs = &walk.elements;
    match walk.kind {
        WalkKind::Cycle if xs.len() < 3 => return fail(format!("cycle of {} vertices", xs.len())),
        WalkKind::Path if xs.is_empty() => return fail("empty path".into()),
        WalkKind::Tour | WalkKind::Trail => return fail("expected a cycle or path".into()),
        _ => {}
    }
    let mut seen = vec![false; ring.size() as usize];
    for (i, x) in xs.iter().enumerate() {
        ring.check(x)?;
        if !ring.is_vertex(x) {
            return fail(format!("{x} at index {i} lies in the radical"));
        }
        if std::mem::replace(&mut seen[ring.index_of(x) as usize], true) {
            return fail(format!("{x} repeats at index {i}"));
        }
    }
    let closing = (walk.kind == WalkKind::Cycle).then(|| (xs[xs.len() - 1].clone(), xs[0].clone()));
    let steps = xs.windows(2).map(|w| (w[0].clone(), w[1].clone())).chain(closing);
    for (i, (a, b)) in steps.enumerate() {
        if !adjacent(ring, &a, &b)? {
            return fail(format!("step {i}: {a} and {b} are not adjacent"));
        }
    }
    if spanning && xs.len() as u64 != ring.vertex_count() {
        return fail(format!("{} of {} vertices visited", xs.len(), ring.vertex_count()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    Figure1Compose,
    TwoFieldGrid,
    KZ2Z2,
    RadicalFigure9,
    BlowupLift,
    LocalClique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub strategy: Strategy,
    pub ring: String,
    pub walk: ElementWalk,
    pub parts: Vec<ConstructionTrace>,
}

/// Nonzero elements of a field grouped into `{e}` with `e = e^-1` and
/// `{a, a^-1}` otherwise: `1`, then `-1` when distinct, then pairs by
/// ascending smaller member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Block {
    Single(Code),
    Pair(Code, Code),
}

fn require_field(f: &LocalRing) -> Result<()> {
    if f.is_field() {
        Ok(())
    } else {
        Err(Error::Infeasible(format!(
            "{} is not a field",
            ring_spec::format_local(f.kind())
        )))
    }
}

fn blocks(f: &LocalRing) -> Vec<Block> {
    let mut out = vec![Block::Single(1)];
    let m1 = f.minus_one();
    if m1 != 1 {
        out.push(Block::Single(m1));
    }
    for a in 2..f.size() {
        let b = f.inverse(a).expect("field");
        if a < b {
            out.push(Block::Pair(a, b));
        }
    }
    out
}

fn el(coords: Vec<Code>) -> RingElement {
    RingElement::new(coords)
}

/// Alternating walk through two sides of a complete bipartite graph.
fn weave<T: Clone>(left: &[T], right: &[T]) -> Vec<T> {
    left.iter()
        .zip(right)
        .flat_map(|(l, r)| [l.clone(), r.clone()])
        .collect()
}

/// `first`, then the remaining rows ascending, then `last`.
fn rows_between(q: Code, first: Code, last: Code) -> Vec<Code> {
    let mut rows = vec![first];
    rows.extend((0..q).filter(|&r| r != first && r != last));
    rows.push(last);
    rows
}

/// Hamiltonian cycle of `J_{E ⊕ F}` for fields with `|E|, |F| >= 3`.
///
/// Columns are grouped by the blocks of `E`. A column `{e}` with `e^2 = 1` is
/// a clique; a column pair `{a, a^-1}` is complete bipartite. Each block is
/// crossed once, leaving on row `f` and entering the next on row `f^-1`, with
/// the zero-column vertices `(0, g)` spliced into these transitions.
pub fn two_field_cycle(e: &LocalRing, f: &LocalRing) -> Result<Vec<RingElement>> {
    require_field(e)?;
    require_field(f)?;
    if e.size() < 3 || f.size() < 3 {
        return Err(Error::Infeasible(
            "the grid construction needs both fields of order at least 3".into(),
        ));
    }
    let (cols, rows, swapped) = if blocks(e).len() >= blocks(f).len() {
        (e, f, false)
    } else {
        (f, e, true)
    };
    let col_blocks = blocks(cols);
    let row_units = blocks(rows);
    let q = rows.size();
    let nb = col_blocks.len();
    let inv = |r: Code| rows.inverse(r).expect("nonzero row");

    // Transition t leaves block t on row `ends[t]`, passes the connectors
    // `links[t]` and enters block t + 1 on row `starts[t + 1]`.
    let mut ends = vec![0; nb];
    let mut starts = vec![0; nb];
    let mut links: Vec<Vec<Code>> = vec![Vec::new(); nb];
    for t in 0..nb {
        let next = (t + 1) % nb;
        let (end, start, link) = match row_units.get(t) {
            Some(&Block::Single(g)) => (g, g, vec![g]),
            Some(&Block::Pair(g, h)) => (g, h, vec![h, g]),
            None => {
                let avoid = if matches!(col_blocks[t], Block::Single(_)) {
                    starts[t]
                } else {
                    0
                };
                let r = (2..q).find(|&r| r != avoid).expect("at least two rows besides 0 and 1");
                (r, inv(r), Vec::new())
            }
        };
        ends[t] = end;
        starts[next] = start;
        links[t] = link;
    }

    let mut out = Vec::with_capacity((cols.size() * q - 1) as usize);
    for (t, block) in col_blocks.iter().enumerate() {
        match *block {
            Block::Single(c) => {
                debug_assert_ne!(starts[t], ends[t]);
                for r in rows_between(q, starts[t], ends[t]) {
                    out.push((c, r));
                }
            }
            Block::Pair(a, b) => {
                let mut left_rows = vec![starts[t]];
                left_rows.extend((0..q).filter(|&r| r != starts[t]));
                let left: Vec<(Code, Code)> = left_rows.into_iter().map(|r| (a, r)).collect();
                let mut right_rows: Vec<Code> = (0..q).filter(|&r| r != ends[t]).collect();
                right_rows.push(ends[t]);
                let right: Vec<(Code, Code)> = right_rows.into_iter().map(|r| (b, r)).collect();
                out.extend(weave(&left, &right));
            }
        }
        out.extend(links[t].iter().map(|&g| (0, g)));
    }
    Ok(out
        .into_iter()
        .map(|(c, r)| if swapped { el(vec![r, c]) } else { el(vec![c, r]) })
        .collect())
}

/// Hamiltonian cycle of `J_{K ⊕ Z2 ⊕ Z2}` for any field `K`.
///
/// The `Z2 ⊕ Z2` part is read as rows `r0 = (0,0)`, `r1 = (0,1)`,
/// `r2 = (1,1)`, `r3 = (1,0)`; rows `r1`, `r2`, `r3` are linked to
/// themselves, `r2` to both others. Column blocks of `K` are crossed in
/// order, and the three zero-column vertices form the closing transition.
pub fn k_z2_z2_cycle(k: &LocalRing) -> Result<Vec<RingElement>> {
    require_field(k)?;
    const R0: (Code, Code) = (0, 0);
    const R1: (Code, Code) = (0, 1);
    const R2: (Code, Code) = (1, 1);
    const R3: (Code, Code) = (1, 0);
    let all_rows = [R0, R1, R2, R3];
    let col_blocks = blocks(k);
    let nb = col_blocks.len();
    let mut out = Vec::with_capacity(4 * k.size() as usize - 1);
    for (t, block) in col_blocks.iter().enumerate() {
        let start = if t <= 1 { R3 } else { R2 };
        let end = if t + 1 == nb { R1 } else { R2 };
        match *block {
            Block::Single(c) => {
                let mut rows = vec![start];
                rows.extend(all_rows.iter().copied().filter(|&r| r != start && r != end));
                rows.push(end);
                out.extend(rows.into_iter().map(|r| (c, r)));
            }
            Block::Pair(a, b) => {
                let mut left = vec![start];
                left.extend(all_rows.iter().copied().filter(|&r| r != start));
                let mut right: Vec<(Code, Code)> =
                    all_rows.iter().copied().filter(|&r| r != end).collect();
                right.push(end);
                let left: Vec<_> = left.into_iter().map(|r| (a, r)).collect();
                let right: Vec<_> = right.into_iter().map(|r| (b, r)).collect();
                out.extend(weave(&left, &right));
            }
        }
    }
    out.extend([R1, R2, R3].map(|r| (0, r)));
    Ok(out
        .into_iter()
        .map(|(c, (x, y))| el(vec![c, x, y]))
        .collect())
}

/// Extends a Hamiltonian cycle of `J_S` (`S` semisimple) to one of
/// `J_{S ⊕ F}`.
///
/// The cycle edge `{x, y}` closing the input is removed, leaving a path `P`
/// from `x` to `y`. The layers `S ⊕ f` are then crossed one block of `F` at a
/// time: clique layers `f = ±1` from `x` to `y`, each pair layer
/// `{a, a^-1}` as a bipartite weave from `x ⊕ a` to `y ⊕ a^-1`, and the zero
/// layer along `P`. Every hand-off is the step `y -> x`.
pub fn figure1_compose(s: &ProductRing, cycle_s: &[RingElement], f: &LocalRing) -> Result<Vec<RingElement>> {
    require_field(f)?;
    if !s.is_semisimple() {
        return Err(Error::Infeasible("composition needs a semisimple base".into()));
    }
    check_elements(s, &ElementWalk::new(WalkKind::Cycle, cycle_s.to_vec()), true)?;
    Ok(compose(s, cycle_s, f))
}

fn compose(s: &ProductRing, cycle_s: &[RingElement], f: &LocalRing) -> Vec<RingElement> {
    let x = cycle_s[0].clone();
    let y = cycle_s[cycle_s.len() - 1].clone();
    let interior = &cycle_s[1..cycle_s.len() - 1];
    let zero = s.zero();
    let with = |e: &RingElement, g: Code| {
        let mut c = e.coords().to_vec();
        c.push(g);
        el(c)
    };
    // S-elements from x to y covering all of S, for the full layers.
    let mut clique_order = vec![x.clone(), zero.clone()];
    clique_order.extend_from_slice(interior);
    clique_order.push(y.clone());
    let mut left_order = cycle_s.to_vec();
    left_order.push(zero.clone());
    let mut right_order = vec![zero];
    right_order.extend_from_slice(cycle_s);

    let mut out = Vec::with_capacity((s.size() * f.size() as u64 - 1) as usize);
    let mut layers = blocks(f);
    // Clique `1` last, so the zero layer sits between `-1` (or the pairs) and `1`.
    let one = layers.remove(0);
    for block in layers {
        match block {
            Block::Single(g) => out.extend(clique_order.iter().map(|e| with(e, g))),
            Block::Pair(a, b) => {
                let left: Vec<_> = left_order.iter().map(|e| with(e, a)).collect();
                let right: Vec<_> = right_order.iter().map(|e| with(e, b)).collect();
                out.extend(weave(&left, &right));
            }
        }
    }
    out.extend(cycle_s.iter().map(|e| with(e, 0)));
    if let Block::Single(g) = one {
        out.extend(clique_order.iter().map(|e| with(e, g)));
    }
    out
}

/// Position of the order-2 residue field when `R/J(R) ≅ Z2 ⊕ F`.
fn z2_plus_field_index(ring: &ProductRing) -> Option<(usize, usize)> {
    if ring.n() != 2 {
        return None;
    }
    let q = ring.residue_field_sizes();
    match (q[0], q[1]) {
        (2, _) => Some((0, 1)),
        (_, 2) => Some((1, 0)),
        _ => None,
    }
}

/// The detour schedule for `R/J(R) ≅ Z2 ⊕ F`.
///
/// The elements over classes `(1, *)` form one clique. The coset over
/// `(0, ±1)` is a clique hanging between two elements over `(1, ±1)`, and
/// the cosets over `(0, a)`, `(0, a^-1)` are woven between an element over
/// `(1, a^-1)` and one over `(1, a)`. With `J(R) != 0` this closes into a
/// cycle; with `J(R) = 0` the `(0, ±1)` vertices become the two ends of a
/// Hamiltonian path.
pub fn figure9(ring: &ProductRing) -> Result<ElementWalk> {
    let walk = detour_schedule(ring)?;
    check_elements(ring, &walk, true)?;
    Ok(walk)
}

fn detour_schedule(ring: &ProductRing) -> Result<ElementWalk> {
    let (t, o) = z2_plus_field_index(ring).ok_or_else(|| {
        Error::Infeasible("the detour schedule needs R/J(R) ≅ Z2 x F".into())
    })?;
    let field = ring.factor(o).residue_field();
    let class = |z: Code, g: Code| {
        let mut c = vec![0; 2];
        c[t] = z;
        c[o] = g;
        el(c)
    };
    let coset = |z: Code, g: Code| ring.coset(&class(z, g));
    let m1 = field.minus_one();
    let pairs: Vec<(Code, Code)> = blocks(&field)
        .into_iter()
        .filter_map(|b| match b {
            Block::Pair(a, b) => Some((a, b)),
            Block::Single(_) => None,
        })
        .collect();
    let mut used = HashSet::new();
    let mut out = Vec::with_capacity(ring.vertex_count() as usize);
    fn take(x: RingElement, out: &mut Vec<RingElement>, used: &mut HashSet<RingElement>) {
        used.insert(x.clone());
        out.push(x);
    }
    let closed = ring.radical_size() > 1;
    if closed {
        for g in if m1 == 1 { vec![1] } else { vec![1, m1] } {
            let hub = coset(1, g);
            take(hub[0].clone(), &mut out, &mut used);
            out.extend(coset(0, g));
            take(hub[1].clone(), &mut out, &mut used);
        }
    } else {
        out.push(class(0, 1));
        take(class(1, 1), &mut out, &mut used);
    }
    for &(a, b) in &pairs {
        take(coset(1, b)[0].clone(), &mut out, &mut used);
        out.extend(weave(&coset(0, a), &coset(0, b)));
        take(coset(1, a)[0].clone(), &mut out, &mut used);
    }
    let tail = (!closed && m1 != 1).then(|| class(1, m1));
    for g in 0..field.size() {
        for x in coset(1, g) {
            if !used.contains(&x) && Some(&x) != tail.as_ref() {
                take(x, &mut out, &mut used);
            }
        }
    }
    if let Some(x) = tail {
        out.push(x);
        out.push(class(0, m1));
    }
    Ok(ElementWalk::new(if closed { WalkKind::Cycle } else { WalkKind::Path }, out))
}

/// Lifts a Hamiltonian walk of `J_{R/J(R)}` to a Hamiltonian cycle of `J_R`.
///
/// A quotient cycle `c_0 … c_{N-1}` is lifted round-robin: the `r`-th
/// element of every coset in cycle order, for `r = 0 … |J| - 1`. A quotient
/// path is only accepted over `Z2 ⊕ F` and is replaced by [`figure9`].
pub fn blowup_lift(ring: &ProductRing, quotient_walk: &ElementWalk) -> Result<ElementWalk> {
    if ring.radical_size() == 1 {
        return Err(Error::Infeasible("the ring has zero radical".into()));
    }
    check_elements(&ring.semisimplify(), quotient_walk, true)?;
    let walk = lift(ring, quotient_walk)?;
    check_elements(ring, &walk, true)?;
    Ok(walk)
}

fn lift(ring: &ProductRing, quotient_walk: &ElementWalk) -> Result<ElementWalk> {
    match quotient_walk.kind {
        WalkKind::Cycle => {
            // Radical offsets in coset order: mixed radix over `|J(R_i)|`, first factor most significant.
            let factors = ring.factors();
            let m = ring.radical_size() as usize;
            let mut out = Vec::with_capacity(m * quotient_walk.elements.len());
            for r in 0..m as u64 {
                let mut rest = r;
                let mut offsets = vec![0; factors.len()];
                for (i, f) in factors.iter().enumerate().rev() {
                    let j = f.radical_size() as u64;
                    offsets[i] = (rest % j) as Code * f.residue_field_size();
                    rest /= j;
                }
                out.extend(quotient_walk.elements.iter().map(|c| {
                    el(c.coords().iter().zip(&offsets).map(|(&a, &t)| a + t).collect())
                }));
            }
            Ok(ElementWalk::new(WalkKind::Cycle, out))
        }
        _ if z2_plus_field_index(ring).is_some() => detour_schedule(ring),
        _ => Err(Error::Infeasible(
            "a quotient path lifts only over Z2 x F".into(),
        )),
    }
}

fn trace(strategy: Strategy, ring: &ProductRing, walk: ElementWalk, parts: Vec<ConstructionTrace>) -> ConstructionTrace {
    ConstructionTrace {
        strategy,
        ring: ring_spec::format(ring),
        walk,
        parts,
    }
}

fn fields_ring(fields: &[LocalRing]) -> ProductRing {
    ProductRing::new(fields.to_vec()).expect("sub-product of a valid ring")
}

/// Hamiltonian cycle of a semisimple ring with at least two factors that is
/// not `Z2 ⊕ F`.
fn semisimple_cycle(ring: &ProductRing) -> Result<ConstructionTrace> {
    let fields = ring.factors();
    let n = fields.len();
    let big: Vec<usize> = (0..n).filter(|&i| fields[i].size() >= 3).collect();
    let (base, mut current) = if big.len() >= 2 {
        let (i, j) = (big[0], big[1]);
        let base = vec![i, j];
        let sub = fields_ring(&[fields[i].clone(), fields[j].clone()]);
        let walk = two_field_cycle(&fields[i], &fields[j])?;
        let t = trace(Strategy::TwoFieldGrid, &sub, ElementWalk::new(WalkKind::Cycle, walk), vec![]);
        (base, t)
    } else {
        if n < 3 {
            return Err(Error::Infeasible("Z2 x F has no Hamiltonian cycle".into()));
        }
        let twos: Vec<usize> = (0..n).filter(|&i| fields[i].size() == 2).collect();
        let k = big.first().copied().unwrap_or_else(|| twos[2]);
        let base = vec![k, twos[0], twos[1]];
        let sub = fields_ring(&base.iter().map(|&i| fields[i].clone()).collect::<Vec<_>>());
        let walk = k_z2_z2_cycle(&fields[k])?;
        let t = trace(Strategy::KZ2Z2, &sub, ElementWalk::new(WalkKind::Cycle, walk), vec![]);
        (base, t)
    };
    let mut order = base;
    for i in 0..n {
        if order.contains(&i) {
            continue;
        }
        let s = fields_ring(&order.iter().map(|&j| fields[j].clone()).collect::<Vec<_>>());
        let walk = compose(&s, &current.walk.elements, &fields[i]);
        order.push(i);
        let sub = fields_ring(&order.iter().map(|&j| fields[j].clone()).collect::<Vec<_>>());
        current = trace(Strategy::Figure1Compose, &sub, ElementWalk::new(WalkKind::Cycle, walk), vec![current]);
    }
    if order.iter().enumerate().any(|(pos, &i)| pos != i) {
        let elements = current
            .walk
            .elements
            .iter()
            .map(|x| {
                let mut c = vec![0; n];
                for (pos, &i) in order.iter().enumerate() {
                    c[i] = x.coord(pos);
                }
                el(c)
            })
            .collect();
        current.walk.elements = elements;
        current.ring = ring_spec::format(ring);
    }
    Ok(current)
}

/// Hamiltonian cycle, or Hamiltonian path where no cycle exists, for every
/// ring the Hamiltonicity theorem allows.
pub fn construct_hamiltonian(ring: &ProductRing) -> Result<ConstructionTrace> {
    let status = thm_hamiltonian(ring);
    if status == HamStatus::Neither {
        return Err(Error::Infeasible(format!(
            "{} has neither a Hamiltonian cycle nor a Hamiltonian path",
            ring_spec::format(ring)
        )));
    }
    let result = if ring.is_local() {
        let elements: Vec<RingElement> = ring.elements().filter(|x| ring.is_vertex(x)).collect();
        let kind = if elements.len() >= 3 { WalkKind::Cycle } else { WalkKind::Path };
        trace(Strategy::LocalClique, ring, ElementWalk::new(kind, elements), vec![])
    } else if ring.is_semisimple() {
        if z2_plus_field_index(ring).is_some() {
            trace(Strategy::RadicalFigure9, ring, detour_schedule(ring)?, vec![])
        } else {
            semisimple_cycle(ring)?
        }
    } else {
        let quotient = construct_hamiltonian(&ring.semisimplify())?;
        let strategy = if quotient.walk.kind == WalkKind::Cycle {
            Strategy::BlowupLift
        } else {
            Strategy::RadicalFigure9
        };
        let walk = lift(ring, &quotient.walk)?;
        trace(strategy, ring, walk, vec![quotient])
    };
    let expected = match status {
        HamStatus::HamiltonianCycle => WalkKind::Cycle,
        _ => WalkKind::Path,
    };
    if result.walk.kind != expected {
        return Err(Error::InvalidWalk(format!(
            "constructed a {:?} where a {:?} was expected",
            result.walk.kind, expected
        )));
    }
    check_elements(ring, &result.walk, true)?;
    Ok(result)
}

/// One validated cycle of every length `3..=|V|`.
///
/// Shorter cycles come from chords of the constructed Hamiltonian cycle and
/// from removing vertices whose cycle neighbours are adjacent; any length
/// still missing is searched for exactly within `budget`.
pub fn cycles_all_lengths(ring: &ProductRing, budget: &SearchBudget) -> Result<Vec<ElementWalk>> {
    if !thm_pancyclic(ring) {
        return Err(Error::Infeasible(format!(
            "{} is not pancyclic",
            ring_spec::format(ring)
        )));
    }
    let g = JacobsonGraph::build(ring)?;
    let ham = construct_hamiltonian(ring)?.walk.to_walk(&g)?;
    let mut found: BTreeMap<usize, Walk> = oracles::cycles_from_hamiltonian(&g, &ham);
    for len in 3..g.vertex_count() {
        if found.contains_key(&len) {
            continue;
        }
        match oracles::cycle_of_length(&g, len, budget) {
            oracles::Search::Found(w) => {
                found.insert(len, w);
            }
            oracles::Search::ProvedAbsent => {
                return Err(Error::Infeasible(format!("no cycle of length {len}")))
            }
            oracles::Search::BudgetExceeded(e) => {
                return Err(Error::Infeasible(format!("cycle of length {len}: {e}")))
            }
        }
    }
    found
        .values()
        .map(|w| {
            oracles::validate_walk(&g, w).map_err(|v| Error::InvalidWalk(v.to_string()))?;
            Ok(ElementWalk::from_walk(&g, w))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_spec::parse;

    fn field(q: u32) -> LocalRing {
        let (p, k) = crate::numtheory::prime_power(q as u64).unwrap();
        LocalRing::galois(p as u32, k).unwrap()
    }

    fn assert_spanning_cycle(ring: &ProductRing, xs: &[RingElement]) {
        let w = ElementWalk::new(WalkKind::Cycle, xs.to_vec());
        check_elements(ring, &w, true).unwrap();
        let g = JacobsonGraph::build(ring).unwrap();
        assert_eq!(oracles::validate_spanning(&g, &w.to_walk(&g).unwrap()), Ok(()));
    }

    #[test]
    fn two_field_grid_sizes() {
        for (a, b, len) in [(3, 3, 8), (4, 3, 11), (5, 4, 19), (3, 5, 14), (7, 7, 48), (8, 9, 71), (4, 4, 15)] {
            let (e, f) = (field(a), field(b));
            let cycle = two_field_cycle(&e, &f).unwrap();
            assert_eq!(cycle.len(), len, "{a} {b}");
            let ring = ProductRing::new(vec![e, f]).unwrap();
            assert_spanning_cycle(&ring, &cycle);
        }
        assert!(two_field_cycle(&field(2), &field(5)).is_err());
        assert!(two_field_cycle(&LocalRing::integer_mod(3, 2).unwrap(), &field(3)).is_err());
    }

    #[test]
    fn k_z2_z2_sizes() {
        for (q, len) in [(2, 7), (3, 11), (4, 15), (5, 19), (7, 27), (9, 35)] {
            let k = field(q);
            let cycle = k_z2_z2_cycle(&k).unwrap();
            assert_eq!(cycle.len(), len);
            let ring = ProductRing::new(vec![k, field(2), field(2)]).unwrap();
            assert_spanning_cycle(&ring, &cycle);
        }
    }

    #[test]
    fn composition_sizes() {
        let s = parse("Z3 x Z3").unwrap();
        let base = two_field_cycle(&field(3), &field(3)).unwrap();
        for (q, len) in [(3, 26), (2, 17), (4, 35), (5, 44)] {
            let out = figure1_compose(&s, &base, &field(q)).unwrap();
            assert_eq!(out.len(), len);
            let mut fs = s.factors().to_vec();
            fs.push(field(q));
            assert_spanning_cycle(&ProductRing::new(fs).unwrap(), &out);
        }
        let broken: Vec<RingElement> = base.iter().rev().skip(1).cloned().collect();
        assert!(figure1_compose(&s, &broken, &field(3)).is_err());
    }

    #[test]
    fn blowup_examples() {
        let r = parse("Z9 x Z3").unwrap();
        let q = ElementWalk::new(WalkKind::Cycle, two_field_cycle(&field(3), &field(3)).unwrap());
        let lifted = blowup_lift(&r, &q).unwrap();
        assert_eq!(lifted.elements.len(), 24);
        assert_spanning_cycle(&r, &lifted.elements);

        let r = parse("Z4 x Z2").unwrap();
        let path = figure9(&r.semisimplify()).unwrap();
        assert_eq!(path.kind, WalkKind::Path);
        let lifted = blowup_lift(&r, &path).unwrap();
        assert_eq!(lifted.elements.len(), 6);
        assert_spanning_cycle(&r, &lifted.elements);

        let r = parse("Z4 x Z3").unwrap();
        let path = figure9(&r.semisimplify()).unwrap();
        assert_eq!(path.elements.len(), 5);
        let lifted = blowup_lift(&r, &path).unwrap();
        assert_eq!(lifted.elements.len(), 10);
        assert_spanning_cycle(&r, &lifted.elements);

        assert!(blowup_lift(&parse("Z3 x Z3").unwrap(), &q).is_err());
    }

    #[test]
    fn dispatcher_examples() {
        let t = construct_hamiltonian(&parse("Z3 x Z3 x Z3").unwrap()).unwrap();
        assert_eq!(t.strategy, Strategy::Figure1Compose);
        assert_eq!(t.parts[0].strategy, Strategy::TwoFieldGrid);
        assert_eq!(t.walk.elements.len(), 26);

        let t = construct_hamiltonian(&parse("Z2 x Z5").unwrap()).unwrap();
        assert_eq!(t.walk.kind, WalkKind::Path);
        assert_eq!(t.walk.elements.len(), 9);

        let t = construct_hamiltonian(&parse("Z4 x Z2").unwrap()).unwrap();
        assert_eq!(t.strategy, Strategy::RadicalFigure9);
        assert_eq!(t.walk.kind, WalkKind::Cycle);

        let t = construct_hamiltonian(&parse("Z8").unwrap()).unwrap();
        assert_eq!(t.strategy, Strategy::LocalClique);
        assert_eq!(t.walk.elements.len(), 4);

        let t = construct_hamiltonian(&parse("Z2 x Z3 x Z5 x Z2").unwrap()).unwrap();
        assert_eq!(t.ring, "Z2 x Z3 x Z5 x Z2");
        let t = construct_hamiltonian(&parse("Z3 x Z2 x GF(4) x Z2").unwrap()).unwrap();
        assert_eq!(t.walk.elements.len(), 47);

        assert!(matches!(construct_hamiltonian(&parse("Z9").unwrap()), Err(Error::Infeasible(_))));
        assert!(matches!(construct_hamiltonian(&parse("Z2").unwrap()), Err(Error::Infeasible(_))));
    }

    #[test]
    fn pancyclic_families() {
        for (spec, n) in [("Z3 x Z3", 8), ("Z4 x Z2", 6), ("Z2 x Z2 x Z2", 7)] {
            let r = parse(spec).unwrap();
            let cycles = cycles_all_lengths(&r, &SearchBudget::default()).unwrap();
            let lengths: Vec<usize> = cycles.iter().map(ElementWalk::length).collect();
            assert_eq!(lengths, (3..=n).collect::<Vec<_>>(), "{spec}");
            for c in &cycles {
                check_elements(&r, c, false).unwrap();
            }
        }
        assert!(cycles_all_lengths(&parse("Z2 x Z3").unwrap(), &SearchBudget::default()).is_err());
    }

    #[test]
    fn traces_serialize() {
        let t = construct_hamiltonian(&parse("Z2 x Z2 x Z2").unwrap()).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["strategy"], "KZ2Z2");
        assert_eq!(v["walk"]["kind"], "cycle");
        assert_eq!(v["walk"]["elements"].as_array().unwrap().len(), 7);
        assert_eq!(v["walk"]["elements"][0].as_array().unwrap().len(), 3);
    }
}
