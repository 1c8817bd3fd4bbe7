//! Dense multidimensional matrices with polynomial entries.
//!
//! Entries are stored row-major (last index fastest) and all share one
//! variable list.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{vars_of, MultiPoly, Vars};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape(Vec<usize>);

impl Shape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Dimension("a shape needs at least one axis".into()));
        }
        if dims.contains(&0) {
            return Err(Error::Dimension(format!("zero-length axis in {dims:?}")));
        }
        Ok(Shape(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Number of entries.
    pub fn size(&self) -> usize {
        self.0.iter().product()
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.0.len());
        idx.iter()
            .zip(&self.0)
            .fold(0, |acc, (&i, &n)| {
                debug_assert!(i < n);
                acc * n + i
            })
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.0.len()];
        for (slot, &n) in idx.iter_mut().zip(&self.0).rev() {
            *slot = flat % n;
            flat /= n;
        }
        idx
    }

    /// All multi-indices in row-major order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size()).map(|i| self.unflatten(i))
    }

    pub fn is_hypercubic(&self) -> bool {
        self.0.iter().all(|&n| n == self.0[0])
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

/// The multi-indices `(i_0, ..., i_n)` with `i_0 + ... + i_n = degree`,
/// listed in descending lexicographic order, so `(degree, 0, ..., 0)` (the
/// pure power of the first variable) comes first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndexSet {
    nvars: usize,
    degree: u32,
    indices: Vec<Vec<u32>>,
}

impl MultiIndexSet {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn indices(&self) -> &[Vec<u32>] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, index: &[u32]) -> Option<usize> {
        self.indices.iter().position(|i| i == index)
    }
}

pub fn enumerate_multiindices(nvars: usize, degree: u32) -> MultiIndexSet {
    fn rec(rest: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=degree).rev() {
            prefix.push(first);
            rec(rest - 1, degree - first, prefix, out);
            prefix.pop();
        }
    }
    assert!(nvars >= 1, "need at least one variable");
    let mut indices = Vec::new();
    rec(nvars, degree, &mut Vec::new(), &mut indices);
    MultiIndexSet {
        nvars,
        degree,
        indices,
    }
}

#[derive(Clone, Debug)]
pub struct Tensor {
    shape: Shape,
    vars: Vars,
    entries: Vec<MultiPoly>,
}

impl PartialEq for Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.entries == other.entries
    }
}

impl Tensor {
    /// Builds a tensor from row-major entries. `vars` seeds the shared
    /// variable list; variables occurring in entries are appended.
    pub fn new(shape: Shape, vars: Vars, entries: Vec<MultiPoly>) -> Result<Self> {
        if entries.len() != shape.size() {
            return Err(Error::Dimension(format!(
                "shape {shape} needs {} entries, got {}",
                shape.size(),
                entries.len()
            )));
        }
        let mut all: Vec<String> = vars.to_vec();
        for e in &entries {
            for v in e.vars().iter() {
                if !all.contains(v) {
                    all.push(v.clone());
                }
            }
        }
        let vars: Vars = if all.len() == vars.len() { vars } else { all.into() };
        let entries = entries
            .into_iter()
            .map(|e| e.with_vars(&vars).expect("vars is a superset"))
            .collect();
        Ok(Tensor {
            shape,
            vars,
            entries,
        })
    }

    pub fn from_fn(shape: Shape, vars: Vars, mut f: impl FnMut(&[usize]) -> MultiPoly) -> Self {
        let entries = shape.indices().map(|i| f(&i)).collect();
        Tensor::new(shape, vars, entries).expect("entry count matches shape")
    }

    pub fn zeros(shape: Shape, vars: Vars) -> Self {
        let entries = vec![MultiPoly::zero(vars.clone()); shape.size()];
        Tensor {
            shape,
            vars,
            entries,
        }
    }

    /// Tensor with constant entries, row-major.
    pub fn from_scalars(dims: &[usize], values: &[Scalar]) -> Result<Self> {
        let vars: Vars = vars_of::<&str>(&[]);
        let entries = values
            .iter()
            .map(|v| MultiPoly::constant(vars.clone(), v.clone()))
            .collect();
        Tensor::new(Shape::new(dims.to_vec())?, vars, entries)
    }

    pub fn from_ints(dims: &[usize], values: &[i64]) -> Result<Self> {
        let v: Vec<Scalar> = values.iter().map(|&n| Scalar::int(n)).collect();
        Tensor::from_scalars(dims, &v)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn get(&self, idx: &[usize]) -> &MultiPoly {
        &self.entries[self.shape.flat_index(idx)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn map(&self, f: impl FnMut(&MultiPoly) -> MultiPoly) -> Tensor {
        let entries = self.entries.iter().map(f).collect();
        Tensor::new(self.shape.clone(), self.vars.clone(), entries).unwrap()
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.shape.rank() {
            return Err(Error::Dimension(format!(
                "axis {axis} out of range for shape {}",
                self.shape
            )));
        }
        Ok(())
    }

    /// Replaces `axis` by the linear form `sum_j u_j * t[.., j, ..]` in the
    /// fresh variables `names`. Contracting the only axis yields a `1`-shaped
    /// tensor.
    pub fn contract_axis<S: AsRef<str>>(&self, axis: usize, names: &[S]) -> Result<Tensor> {
        self.check_axis(axis)?;
        let n = self.shape.dims()[axis];
        if names.len() != n {
            return Err(Error::Dimension(format!(
                "axis {axis} has length {n}, got {} variables",
                names.len()
            )));
        }
        for name in names {
            if self.vars.iter().any(|v| v == name.as_ref()) {
                return Err(Error::VariableCollision(name.as_ref().to_string()));
            }
        }
        let mut all = self.vars.to_vec();
        all.extend(names.iter().map(|s| s.as_ref().to_string()));
        let vars: Vars = all.into();
        let us: Vec<MultiPoly> = names
            .iter()
            .map(|s| MultiPoly::var(vars.clone(), s.as_ref()).unwrap())
            .collect();
        let mut dims = self.shape.dims().to_vec();
        dims.remove(axis);
        if dims.is_empty() {
            dims.push(1);
        }
        let shape = Shape::new(dims)?;
        let rank = self.shape.rank();
        Ok(Tensor::from_fn(shape, vars.clone(), |idx| {
            let mut full: Vec<usize> = if rank == 1 { vec![] } else { idx.to_vec() };
            full.insert(axis, 0);
            let mut acc = MultiPoly::zero(vars.clone());
            for (j, u) in us.iter().enumerate() {
                full[axis] = j;
                let e = self.get(&full);
                if !e.is_zero() {
                    acc = &acc + &(u * e);
                }
            }
            acc
        }))
    }

    /// Applies a (possibly rectangular) `rows x n_axis` matrix on one slot:
    /// `new[.., i, ..] = sum_j m[i][j] * old[.., j, ..]`.
    pub fn apply_matrix(&self, axis: usize, m: &[Vec<Scalar>]) -> Result<Tensor> {
        self.check_axis(axis)?;
        let n = self.shape.dims()[axis];
        if m.is_empty() || m.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!(
                "matrix rows must have length {n} to act on axis {axis}"
            )));
        }
        let mut dims = self.shape.dims().to_vec();
        dims[axis] = m.len();
        let shape = Shape::new(dims)?;
        let vars = self.vars.clone();
        Ok(Tensor::from_fn(shape, vars.clone(), |idx| {
            let mut src = idx.to_vec();
            let mut acc = MultiPoly::zero(vars.clone());
            for (j, g) in m[idx[axis]].iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                src[axis] = j;
                acc = &acc + &self.get(&src).scale(g);
            }
            acc
        }))
    }

    /// The `GL` action of a square matrix on one slot.
    pub fn apply_gl(&self, axis: usize, g: &[Vec<Scalar>]) -> Result<Tensor> {
        self.check_axis(axis)?;
        let n = self.shape.dims()[axis];
        if g.len() != n {
            return Err(Error::Dimension(format!(
                "need a {n}x{n} matrix for axis {axis}, got {} rows",
                g.len()
            )));
        }
        self.apply_matrix(axis, g)
    }

    /// New axis `i` is old axis `perm[i]`.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<Tensor> {
        let rank = self.shape.rank();
        let mut seen = vec![false; rank];
        if perm.len() != rank || perm.iter().any(|&p| p >= rank || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::Dimension(format!("{perm:?} is not a permutation of {rank} axes")));
        }
        let dims: Vec<usize> = perm.iter().map(|&p| self.shape.dims()[p]).collect();
        let shape = Shape::new(dims)?;
        Ok(Tensor::from_fn(shape, self.vars.clone(), |idx| {
            let mut src = vec![0; rank];
            for (i, &p) in perm.iter().enumerate() {
                src[p] = idx[i];
            }
            self.get(&src).clone()
        }))
    }

    /// Removes length-1 axes (keeping one axis if all have length 1).
    pub fn squeeze(&self) -> Tensor {
        let mut dims: Vec<usize> = self.shape.dims().iter().copied().filter(|&n| n > 1).collect();
        if dims.is_empty() {
            dims.push(1);
        }
        Tensor {
            shape: Shape::new(dims).unwrap(),
            vars: self.vars.clone(),
            entries: self.entries.clone(),
        }
    }

    /// Rows of a 2-axis tensor.
    pub fn matrix_rows(&self) -> Result<Vec<Vec<MultiPoly>>> {
        match self.shape.dims() {
            &[r, c] => Ok((0..r)
                .map(|i| (0..c).map(|j| self.get(&[i, j]).clone()).collect())
                .collect()),
            _ => Err(Error::Dimension(format!("shape {} is not a matrix", self.shape))),
        }
    }
}
