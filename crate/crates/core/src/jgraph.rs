//! The Jacobson graph `J_R`: vertices `R \ J(R)`, with `x ~ y` whenever
//! `1 - xy` is not a unit.
//!
//! Alongside the graph live the closed-form vertex-degree and edge-count
//! formulas. They are implemented verbatim, including a known mismatch in the
//! degree correction term; [`degree_corrected_form`] is the variant whose
//! correction is the actual self-adjacency indicator.

use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::local_ring::{Code, LocalRing};
use crate::product_ring::{ProductRing, RingElement};

pub const DEFAULT_VERTEX_LIMIT: u64 = 8192;

const LINK_TABLE_LIMIT: u32 = 256;

/// Per-factor test for `1 - ab ∈ J(R_i)`.
struct FactorLink<'a> {
    ring: &'a LocalRing,
    table: Option<Vec<bool>>,
}

impl<'a> FactorLink<'a> {
    fn new(ring: &'a LocalRing) -> Self {
        let table = (ring.size() <= LINK_TABLE_LIMIT).then(|| {
            let n = ring.size();
            (0..n * n)
                .map(|i| link_direct(ring, i / n, i % n))
                .collect()
        });
        FactorLink { ring, table }
    }

    #[inline]
    fn linked(&self, a: Code, b: Code) -> bool {
        match &self.table {
            Some(t) => t[(a * self.ring.size() + b) as usize],
            None => link_direct(self.ring, a, b),
        }
    }
}

fn link_direct(ring: &LocalRing, a: Code, b: Code) -> bool {
    !ring.is_unit(ring.sub(ring.one(), ring.mul(a, b)))
}

/// Adjacency test straight from the definition. Errors when `x = y` or either
/// argument lies in `J(R)`.
pub fn adjacent(ring: &ProductRing, x: &RingElement, y: &RingElement) -> Result<bool> {
    ring.check(x)?;
    ring.check(y)?;
    if !ring.is_vertex(x) || !ring.is_vertex(y) {
        return Err(Error::InRadical);
    }
    if x == y {
        return Err(Error::SameVertex);
    }
    Ok(ring
        .factors()
        .iter()
        .zip(x.coords().iter().zip(y.coords()))
        .any(|(f, (&a, &b))| link_direct(f, a, b)))
}

#[derive(Debug, Clone)]
pub struct JacobsonGraph {
    ring: ProductRing,
    vertices: Vec<RingElement>,
    /// Lexicographic element rank -> vertex id.
    ids: Vec<u32>,
    adj: Vec<BitSet>,
}

impl JacobsonGraph {
    pub fn build(ring: &ProductRing) -> Result<Self> {
        Self::build_with_limit(ring, DEFAULT_VERTEX_LIMIT)
    }

    pub fn build_with_limit(ring: &ProductRing, limit: u64) -> Result<Self> {
        let count = ring.vertex_count();
        if count > limit {
            return Err(Error::VertexLimit {
                vertices: count,
                limit,
            });
        }
        let mut ids = vec![u32::MAX; ring.size() as usize];
        let mut vertices = Vec::with_capacity(count as usize);
        for (rank, x) in ring.elements().enumerate() {
            if ring.is_vertex(&x) {
                ids[rank] = vertices.len() as u32;
                vertices.push(x);
            }
        }
        let links: Vec<FactorLink> = ring.factors().iter().map(FactorLink::new).collect();
        let n = vertices.len();
        let adj: Vec<BitSet> = (0..n)
            .into_par_iter()
            .map(|u| {
                let mut row = BitSet::new(n);
                let xu = vertices[u].coords();
                for (v, y) in vertices.iter().enumerate() {
                    if u != v
                        && links
                            .iter()
                            .zip(xu.iter().zip(y.coords()))
                            .any(|(l, (&a, &b))| l.linked(a, b))
                    {
                        row.insert(v);
                    }
                }
                row
            })
            .collect();
        Ok(JacobsonGraph {
            ring: ring.clone(),
            vertices,
            ids,
            adj,
        })
    }

    pub fn ring(&self) -> &ProductRing {
        &self.ring
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[RingElement] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &RingElement {
        &self.vertices[id]
    }

    /// Vertex id of `x`, or `None` for elements of `J(R)` and malformed input.
    pub fn id_of(&self, x: &RingElement) -> Option<usize> {
        self.ring.check(x).ok()?;
        match self.ids[self.ring.index_of(x) as usize] {
            u32::MAX => None,
            id => Some(id as usize),
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &BitSet {
        &self.adj[u]
    }

    /// Row popcount.
    pub fn degree_oracle(&self, u: usize) -> usize {
        self.adj[u].count()
    }

    /// Half the total popcount.
    pub fn edge_count_oracle(&self) -> usize {
        self.adj.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn export(&self, format: ExportFormat) -> String {
        let mut out = String::new();
        match format {
            ExportFormat::Dot => {
                out.push_str("graph jacobson {\n");
                for x in &self.vertices {
                    let _ = writeln!(out, "\"{x}\";");
                }
                for (u, v) in self.edges() {
                    let _ = writeln!(out, "\"{}\" -- \"{}\";", self.vertices[u], self.vertices[v]);
                }
                out.push_str("}\n");
            }
            ExportFormat::Edges => {
                for (u, v) in self.edges() {
                    let _ = writeln!(out, "{u} {v}");
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Edges,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "edges" => Ok(ExportFormat::Edges),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// `|R| * (1 - prod_{x_i not in J(R_i)} (1 - 1/|F_i|))`, the size of the union
/// of the sets `A_i` of elements inverting `x` modulo `J(R_i)`.
fn inverse_union_size(ring: &ProductRing, x: &RingElement) -> i64 {
    let mut keep = Ratio::from_integer(1i128);
    for (f, &c) in ring.factors().iter().zip(x.coords()) {
        if f.is_unit(c) {
            let q = f.residue_field_size() as i128;
            keep *= Ratio::new(q - 1, q);
        }
    }
    let value = Ratio::from_integer(ring.size() as i128) * (Ratio::from_integer(1) - keep);
    debug_assert!(value.is_integer());
    value.to_integer() as i64
}

fn check_vertex(ring: &ProductRing, x: &RingElement) -> Result<()> {
    ring.check(x)?;
    if ring.in_radical(x) {
        return Err(Error::InRadical);
    }
    Ok(())
}

/// Closed-form degree with the correction term `ε_x` as stated (1 iff every
/// coordinate lies in `J(R_i) + {0, ±1}`).
pub fn degree_closed_form(ring: &ProductRing, x: &RingElement) -> Result<i64> {
    check_vertex(ring, x)?;
    Ok(inverse_union_size(ring, x) - ring.epsilon_x_paper(x)? as i64)
}

/// Closed-form degree with `ε'_x`: 1 iff some coordinate lies in `±1 + J(R_i)`,
/// which is exactly when `x` belongs to its own inverse union.
pub fn degree_corrected_form(ring: &ProductRing, x: &RingElement) -> Result<i64> {
    check_vertex(ring, x)?;
    Ok(inverse_union_size(ring, x) - ring.epsilon_x_corrected(x)? as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeFormula {
    #[serde(serialize_with = "ser_ratio")]
    pub twice_edges: Ratio<i128>,
    #[serde(serialize_with = "ser_ratio")]
    pub edges: Ratio<i128>,
}

impl EdgeFormula {
    pub fn is_integer(&self) -> bool {
        self.edges.is_integer()
    }

    /// Integer rendering, or `p/q` when the formula is fractional.
    pub fn render(&self) -> String {
        render_ratio(&self.edges)
    }
}

pub fn render_ratio(r: &Ratio<i128>) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i128>, s: S) -> std::result::Result<S::Ok, S::Error> {
    if r.is_integer() {
        s.serialize_i128(r.to_integer())
    } else {
        s.serialize_str(&render_ratio(r))
    }
}

/// `2|E| = |R|^2 (1 - prod (1 - 1/|F_i| + 1/|F_i|^2)) - |J(R)| (3^O 2^E - 1)`
/// with `O`/`E` the number of residue fields of odd/even order.
pub fn edge_count_closed_form(ring: &ProductRing) -> EdgeFormula {
    let mut prod = Ratio::from_integer(1i128);
    let (mut odd, mut even) = (0u32, 0u32);
    for q in ring.residue_field_sizes() {
        let q = q as i128;
        prod *= Ratio::new(q * q - q + 1, q * q);
        if q % 2 == 1 {
            odd += 1;
        } else {
            even += 1;
        }
    }
    let size = ring.size() as i128;
    let corr = ring.radical_size() as i128 * (3i128.pow(odd) * 2i128.pow(even) - 1);
    let twice = Ratio::from_integer(size * size) * (Ratio::from_integer(1) - prod)
        - Ratio::from_integer(corr);
    EdgeFormula {
        twice_edges: twice,
        edges: twice / Ratio::from_integer(2),
    }
}
