//! Cochains `C^n(g, V) = ⊕ Hom(Λᵖg₀ ⊗ ⊙ᑫg₁, V_s)` with `p + 2q − s = n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graded::{MultiTensor, Target};
use crate::ratlin::{is_zero_vec, QVec, Rational};

use super::Lie2Module;

/// One summand `Hom(Λᵖg₀ ⊗ ⊙ᑫg₁, V_s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub p: usize,
    pub q: usize,
    pub s: usize,
}

impl Block {
    pub fn new(p: usize, q: usize, s: usize) -> Self {
        Self { p, q, s }
    }

    pub fn degree(&self) -> i64 {
        self.p as i64 + 2 * self.q as i64 - self.s as i64
    }

    pub fn target(&self) -> Target {
        if self.s == 0 {
            Target::V0
        } else {
            Target::V1
        }
    }

    fn key(&self) -> (usize, usize, usize) {
        (self.s, self.p, self.q)
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}, s={})", self.p, self.q, self.s)
    }
}

/// The blocks of `C^n` in flattening order `(s, p, q)`, with dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainLayout {
    pub degree: i64,
    pub blocks: Vec<Block>,
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl CochainLayout {
    pub fn position(&self, b: Block) -> Option<usize> {
        self.blocks.iter().position(|&x| x == b)
    }
}

/// Layout of `C^n`; zero-dimensional blocks are kept so the shape is uniform.
pub fn cochain_space(m: &Lie2Module, n: i64) -> CochainLayout {
    let mut blocks = Vec::new();
    for s in 0..=1usize {
        let top = n + s as i64;
        if top < 0 {
            continue;
        }
        for q in 0..=(top / 2) {
            let p = top - 2 * q;
            blocks.push(Block::new(p as usize, q as usize, s));
        }
    }
    blocks.sort_by_key(Block::key);
    let mut dims = Vec::with_capacity(blocks.len());
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut total = 0;
    for b in &blocks {
        let d = empty_tensor(m, *b).flat_len();
        offsets.push(total);
        dims.push(d);
        total += d;
    }
    CochainLayout { degree: n, blocks, dims, offsets, total }
}

pub(crate) fn empty_tensor(m: &Lie2Module, b: Block) -> MultiTensor {
    let (n0, n1) = m.algebra.dims();
    let tdim = if b.s == 0 { m.v0() } else { m.v1() };
    MultiTensor::zero(b.p, b.q, n0, n1, b.target(), tdim)
}

/// An element of `C^n`, one tensor per block of the layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: i64,
    pub blocks: Vec<Block>,
    pub parts: Vec<MultiTensor>,
}

impl Cochain {
    pub fn zero(m: &Lie2Module, n: i64) -> Self {
        let layout = cochain_space(m, n);
        let parts = layout.blocks.iter().map(|&b| empty_tensor(m, b)).collect();
        Self { degree: n, blocks: layout.blocks, parts }
    }

    /// Inverse of [`Cochain::flatten`].
    pub fn from_flat(m: &Lie2Module, n: i64, v: &[Rational]) -> Result<Self> {
        let mut c = Self::zero(m, n);
        let total: usize = c.parts.iter().map(MultiTensor::flat_len).sum();
        if v.len() != total {
            return Err(Error::Shape(format!(
                "degree-{n} cochain needs {total} coordinates, got {}",
                v.len()
            )));
        }
        let mut off = 0;
        for t in &mut c.parts {
            let l = t.flat_len();
            t.unflatten(&v[off..off + l]);
            off += l;
        }
        Ok(c)
    }

    /// Builds a cochain from the given block tensors; other blocks are zero.
    pub fn from_blocks(m: &Lie2Module, n: i64, given: Vec<(Block, MultiTensor)>) -> Result<Self> {
        let mut c = Self::zero(m, n);
        for (b, t) in given {
            let slot = c.block_mut(b).ok_or_else(|| {
                Error::Shape(format!("block {b} does not occur in degree {n}"))
            })?;
            if !slot.same_shape(&t) {
                return Err(Error::Shape(format!("block {b} has the wrong shape")));
            }
            *slot = t;
        }
        Ok(c)
    }

    pub fn block(&self, b: Block) -> Option<&MultiTensor> {
        self.blocks.iter().position(|&x| x == b).map(|i| &self.parts[i])
    }

    pub fn block_mut(&mut self, b: Block) -> Option<&mut MultiTensor> {
        self.blocks.iter().position(|&x| x == b).map(move |i| &mut self.parts[i])
    }

    /// Block `(p, q, s)`; panics if it is not part of this degree.
    pub fn get(&self, p: usize, q: usize, s: usize) -> &MultiTensor {
        self.block(Block::new(p, q, s)).expect("block of this degree")
    }

    pub fn flatten(&self) -> QVec {
        self.parts.iter().flat_map(MultiTensor::flatten).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(MultiTensor::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.degree, o.degree, "cochain degrees differ");
        let parts = self.parts.iter().zip(&o.parts).map(|(a, b)| a.add(b)).collect();
        Self { degree: self.degree, blocks: self.blocks.clone(), parts }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn scale(&self, a: &Rational) -> Self {
        let parts = self.parts.iter().map(|t| t.scale(a)).collect();
        Self { degree: self.degree, blocks: self.blocks.clone(), parts }
    }

    /// First block with a nonzero value, with the offending tuple.
    pub fn first_nonzero(&self) -> Option<String> {
        for (b, t) in self.blocks.iter().zip(&self.parts) {
            for (c, (xs, as_)) in t.basis_tuples().into_iter().enumerate() {
                if !is_zero_vec(&t.column(c)) {
                    return Some(format!("block {b} at x{xs:?} a{as_:?}"));
                }
            }
        }
        None
    }
}
