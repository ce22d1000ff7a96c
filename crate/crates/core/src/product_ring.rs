//! Direct products `R = R_1 ⊕ … ⊕ R_n` of local rings.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_ring::{Code, LocalRing};

/// Largest product order accepted.
pub const MAX_PRODUCT_SIZE: u64 = 1 << 32;

/// An element of a product ring, one code per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElement(Vec<Code>);

impl RingElement {
    pub fn new(coords: Vec<Code>) -> Self {
        RingElement(coords)
    }

    pub fn coords(&self) -> &[Code] {
        &self.0
    }

    /// Projection onto factor `i` (0-based).
    pub fn coord(&self, i: usize) -> Code {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_coords(self) -> Vec<Code> {
        self.0
    }
}

impl From<Vec<Code>> for RingElement {
    fn from(v: Vec<Code>) -> Self {
        RingElement(v)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductRing {
    factors: Vec<LocalRing>,
    size: u64,
    radical_size: u64,
}

impl ProductRing {
    /// Factor order is kept exactly as given.
    pub fn new(factors: Vec<LocalRing>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptyProduct);
        }
        let mut size: u64 = 1;
        let mut radical_size: u64 = 1;
        for f in &factors {
            size = size
                .checked_mul(f.size() as u64)
                .filter(|&s| s <= MAX_PRODUCT_SIZE)
                .ok_or(Error::TooLarge(size.saturating_mul(f.size() as u64)))?;
            radical_size *= f.radical_size() as u64;
        }
        Ok(ProductRing {
            factors,
            size,
            radical_size,
        })
    }

    pub fn factors(&self) -> &[LocalRing] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &LocalRing {
        &self.factors[i]
    }

    /// Number of local factors.
    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// `|J(R)|`.
    pub fn radical_size(&self) -> u64 {
        self.radical_size
    }

    pub fn vertex_count(&self) -> u64 {
        self.size - self.radical_size
    }

    pub fn is_local(&self) -> bool {
        self.factors.len() == 1
    }

    /// True when `J(R) = 0`, i.e. every factor is a field.
    pub fn is_semisimple(&self) -> bool {
        self.radical_size == 1
    }

    pub fn residue_field_sizes(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.residue_field_size()).collect()
    }

    pub fn check(&self, x: &RingElement) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::Arity {
                expected: self.n(),
                got: x.len(),
            });
        }
        for (f, &c) in self.factors.iter().zip(x.coords()) {
            if !f.contains(c) {
                return Err(Error::CodeOutOfRange { code: c, size: f.size() });
            }
        }
        Ok(())
    }

    /// All elements, lexicographic in coordinate codes.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.size).map(move |i| self.element_at(i))
    }

    /// Element with lexicographic rank `index`.
    pub fn element_at(&self, mut index: u64) -> RingElement {
        let mut coords = vec![0; self.n()];
        for (slot, f) in coords.iter_mut().zip(&self.factors).rev() {
            let s = f.size() as u64;
            *slot = (index % s) as Code;
            index /= s;
        }
        RingElement(coords)
    }

    /// Lexicographic rank of `x` (inverse of [`Self::element_at`]).
    pub fn index_of(&self, x: &RingElement) -> u64 {
        self.factors
            .iter()
            .zip(x.coords())
            .fold(0, |acc, (f, &c)| acc * f.size() as u64 + c as u64)
    }

    pub fn zero(&self) -> RingElement {
        RingElement(vec![0; self.n()])
    }

    /// The all-ones element `1`.
    pub fn one(&self) -> RingElement {
        RingElement(vec![1; self.n()])
    }

    /// Indicator element `e_i` (0-based `i`).
    pub fn e(&self, i: usize) -> RingElement {
        let mut v = vec![0; self.n()];
        v[i] = 1;
        RingElement(v)
    }

    fn zip_with(&self, x: &RingElement, y: &RingElement, op: impl Fn(&LocalRing, Code, Code) -> Code) -> RingElement {
        RingElement(
            self.factors
                .iter()
                .zip(x.coords().iter().zip(y.coords()))
                .map(|(f, (&a, &b))| op(f, a, b))
                .collect(),
        )
    }

    pub fn add(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.zip_with(x, y, LocalRing::add)
    }

    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.zip_with(x, y, LocalRing::mul)
    }

    pub fn sub(&self, x: &RingElement, y: &RingElement) -> RingElement {
        self.zip_with(x, y, LocalRing::sub)
    }

    pub fn neg(&self, x: &RingElement) -> RingElement {
        self.zip_with(x, x, |f, a, _| f.neg(a))
    }

    pub fn is_unit(&self, x: &RingElement) -> bool {
        self.factors.iter().zip(x.coords()).all(|(f, &c)| f.is_unit(c))
    }

    pub fn in_radical(&self, x: &RingElement) -> bool {
        self.factors
            .iter()
            .zip(x.coords())
            .all(|(f, &c)| f.in_maximal_ideal(c))
    }

    /// Vertices of the Jacobson graph are exactly the elements outside `J(R)`.
    pub fn is_vertex(&self, x: &RingElement) -> bool {
        !self.in_radical(x)
    }

    /// `R/J(R) = F_1 ⊕ … ⊕ F_n`, factor order preserved.
    pub fn semisimplify(&self) -> ProductRing {
        ProductRing::new(self.factors.iter().map(LocalRing::residue_field).collect())
            .expect("residue fields of a valid product form a valid product")
    }

    /// The quotient map `R -> R/J(R)`, coordinatewise residue class.
    pub fn project(&self, x: &RingElement) -> RingElement {
        RingElement(
            self.factors
                .iter()
                .zip(x.coords())
                .map(|(f, &c)| f.residue_class(c))
                .collect(),
        )
    }

    /// Elements of the coset of `J(R)` lying over `class` (an element of
    /// [`Self::semisimplify`]), ascending in radical-element order.
    pub fn coset(&self, class: &RingElement) -> Vec<RingElement> {
        let fibers: Vec<Vec<Code>> = self
            .factors
            .iter()
            .zip(class.coords())
            .map(|(f, &r)| f.fiber(r).collect())
            .collect();
        let mut out = vec![Vec::with_capacity(self.n())];
        for fiber in &fibers {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Code>| {
                    fiber.iter().map(move |&c| {
                        let mut next = prefix.clone();
                        next.push(c);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(RingElement).collect()
    }

    /// Coordinate `i` of `x` lies in `J(R_i) + {0, 1, -1}`.
    fn near_trivial(&self, i: usize, c: Code) -> bool {
        let f = &self.factors[i];
        let r = f.residue_class(c);
        r == 0 || r == 1 || r == f.residue_minus_one()
    }

    /// Coordinate `i` of `x` lies in `±1 + J(R_i)`.
    fn self_inverse_class(&self, i: usize, c: Code) -> bool {
        let f = &self.factors[i];
        let r = f.residue_class(c);
        r == 1 || r == f.residue_minus_one()
    }

    /// The degree correction as literally stated for the vertex-degree
    /// formula: 1 iff every coordinate lies in `J(R_i) + {0, ±1}`.
    pub fn epsilon_x_paper(&self, x: &RingElement) -> Result<u8> {
        self.check(x)?;
        if self.in_radical(x) {
            return Err(Error::InRadical);
        }
        Ok(x.coords()
            .iter()
            .enumerate()
            .all(|(i, &c)| self.near_trivial(i, c)) as u8)
    }

    /// Corrected self-adjacency indicator: 1 iff `x` would be its own
    /// neighbour, i.e. some coordinate lies in `±1 + J(R_i)`.
    pub fn epsilon_x_corrected(&self, x: &RingElement) -> Result<u8> {
        self.check(x)?;
        if self.in_radical(x) {
            return Err(Error::InRadical);
        }
        Ok(x.coords()
            .iter()
            .enumerate()
            .any(|(i, &c)| self.self_inverse_class(i, c)) as u8)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(p: u32, k: u32) -> LocalRing {
        LocalRing::integer_mod(p, k).unwrap()
    }

    fn el(v: &[Code]) -> RingElement {
        RingElement::new(v.to_vec())
    }

    #[test]
    fn sizes() {
        let r = ProductRing::new(vec![z(2, 1), z(3, 1)]).unwrap();
        assert_eq!(r.size(), 6);
        let r = ProductRing::new(vec![z(2, 2), z(2, 1)]).unwrap();
        assert_eq!((r.size(), r.radical_size()), (8, 2));
        let r = ProductRing::new(vec![LocalRing::galois(2, 2).unwrap(), z(2, 1)]).unwrap();
        assert_eq!((r.size(), r.radical_size()), (8, 1));
        assert_eq!(ProductRing::new(vec![]).unwrap_err(), Error::EmptyProduct);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let r = ProductRing::new(vec![z(2, 1), z(3, 1)]).unwrap();
        let all: Vec<RingElement> = r.elements().collect();
        assert_eq!(all[0], el(&[0, 0]));
        assert_eq!(all[1], el(&[0, 1]));
        assert_eq!(all[3], el(&[1, 0]));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (i, x) in all.iter().enumerate() {
            assert_eq!(r.index_of(x), i as u64);
        }
    }

    #[test]
    fn unit_and_radical_membership() {
        let r = ProductRing::new(vec![z(2, 1), z(3, 1)]).unwrap();
        assert!(r.is_unit(&el(&[1, 2])));
        let r = ProductRing::new(vec![z(2, 2), z(2, 1)]).unwrap();
        assert!(r.in_radical(&el(&[2, 0])));
        assert!(!r.in_radical(&el(&[1, 0])) && !r.is_unit(&el(&[1, 0])));
        assert_eq!(r.check(&el(&[4, 0])), Err(Error::CodeOutOfRange { code: 4, size: 4 }));
        assert_eq!(r.check(&el(&[1])), Err(Error::Arity { expected: 2, got: 1 }));
    }

    #[test]
    fn semisimplification() {
        let r = ProductRing::new(vec![z(2, 2), z(2, 1)]).unwrap();
        assert_eq!(r.semisimplify(), ProductRing::new(vec![z(2, 1), z(2, 1)]).unwrap());
        let r = ProductRing::new(vec![z(3, 2), z(3, 1)]).unwrap();
        assert_eq!(r.semisimplify(), ProductRing::new(vec![z(3, 1), z(3, 1)]).unwrap());
        let r = ProductRing::new(vec![LocalRing::galois(2, 2).unwrap(), z(2, 1)]).unwrap();
        assert_eq!(r.semisimplify(), r);
        assert_eq!(r.semisimplify().semisimplify(), r.semisimplify());
    }

    #[test]
    fn epsilon_examples() {
        let r = ProductRing::new(vec![z(2, 1), z(2, 1)]).unwrap();
        assert_eq!(r.epsilon_x_paper(&el(&[1, 1])), Ok(1));
        let r = ProductRing::new(vec![z(2, 1), z(5, 1)]).unwrap();
        assert_eq!(r.epsilon_x_paper(&el(&[1, 2])), Ok(0));
        assert_eq!(r.epsilon_x_paper(&el(&[0, 4])), Ok(1));
        assert_eq!(r.epsilon_x_corrected(&el(&[1, 2])), Ok(1));
        assert_eq!(r.epsilon_x_corrected(&el(&[0, 2])), Ok(0));
        assert_eq!(r.epsilon_x_paper(&el(&[0, 0])), Err(Error::InRadical));
    }

    #[test]
    fn cosets_partition_the_ring() {
        let r = ProductRing::new(vec![z(2, 2), z(3, 2)]).unwrap();
        let q = r.semisimplify();
        let mut seen = 0;
        for class in q.elements() {
            let coset = r.coset(&class);
            assert_eq!(coset.len() as u64, r.radical_size());
            for x in &coset {
                assert_eq!(r.project(x), class);
            }
            assert!(coset.windows(2).all(|w| w[0] < w[1]));
            seen += coset.len();
        }
        assert_eq!(seen as u64, r.size());
    }

    #[test]
    fn vertex_count_matches_non_radical_elements() {
        for factors in [
            vec![z(2, 2), z(2, 1)],
            vec![z(3, 2), z(2, 3)],
            vec![LocalRing::truncated(2, 3).unwrap(), LocalRing::galois(3, 2).unwrap()],
            vec![z(2, 1), z(2, 1), z(2, 1), z(3, 1)],
        ] {
            let r = ProductRing::new(factors).unwrap();
            let count = r.elements().filter(|x| r.is_vertex(x)).count() as u64;
            assert_eq!(count, r.size() - r.radical_size());
        }
    }

    #[test]
    fn quotient_map_is_a_surjective_homomorphism() {
        let rings = [
            vec![z(2, 2), z(2, 1)],
            vec![z(3, 2), z(3, 1)],
            vec![LocalRing::truncated(2, 2).unwrap(), z(2, 2)],
            vec![LocalRing::truncated(4, 2).unwrap()],
        ];
        for factors in rings {
            let r = ProductRing::new(factors).unwrap();
            assert!(r.size() <= 256);
            let q = r.semisimplify();
            let elems: Vec<RingElement> = r.elements().collect();
            let mut image: Vec<RingElement> = elems.iter().map(|x| r.project(x)).collect();
            for x in &elems {
                for y in &elems {
                    assert_eq!(r.project(&r.add(x, y)), q.add(&r.project(x), &r.project(y)));
                    assert_eq!(r.project(&r.mul(x, y)), q.mul(&r.project(x), &r.project(y)));
                }
            }
            image.sort();
            image.dedup();
            assert_eq!(image.len() as u64, q.size());
        }
    }
}
