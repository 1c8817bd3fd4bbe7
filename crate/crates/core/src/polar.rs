//! Hyperpolarisations of forms and the determinants built from them.
//!
//! For a form `f` of degree `k` in `x_0..x_n` and a key `K = (k_1..k_d)`, the
//! `K`-polarisation is the `d`-linear form whose entry at multi-indices
//! `(I_1..I_d)` (with `|I_m| = k_m`) is the raw partial derivative
//! `d^{|K|} f / dx^{I_1 + ... + I_d}`. Stacking the polarisations of a system
//! of forms along a last axis gives the `K`-Jacobi form.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hyperdet::hyperdet;
use crate::poly::{vars_of, MultiPoly};
use crate::tensor::{enumerate_multiindices, Shape, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarKey {
    parts: Vec<u32>,
}

impl PolarKey {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "polarisation key needs positive parts, got {parts:?}"
            )));
        }
        Ok(PolarKey { parts })
    }

    /// `(1, ..., 1)` with `k` parts.
    pub fn full(k: u32) -> Result<Self> {
        PolarKey::new(vec![1; k as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// A flat list of forms of one common degree in shared form variables.
#[derive(Clone, Debug)]
pub struct SystemOfForms {
    forms: Vec<MultiPoly>,
    vars: Vec<String>,
    degree: u32,
}

impl SystemOfForms {
    pub fn new<S: AsRef<str>>(forms: Vec<MultiPoly>, vars: &[S]) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::InvalidArgument("empty system of forms".into()));
        }
        let mut degree = None;
        for f in &forms {
            match (degree, f.homogeneous_degree_in(vars)?) {
                (_, None) => {}
                (None, Some(d)) => degree = Some(d),
                (Some(e), Some(d)) if e != d => {
                    return Err(Error::Degree(format!(
                        "system mixes forms of degree {e} and {d}"
                    )))
                }
                _ => {}
            }
        }
        let degree =
            degree.ok_or_else(|| Error::Degree("system has only zero forms".into()))?;
        Ok(SystemOfForms {
            forms,
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            degree,
        })
    }

    pub fn forms(&self) -> &[MultiPoly] {
        &self.forms
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

fn polarize_with_degree<S: AsRef<str>>(f: &MultiPoly, vars: &[S], key: &PolarKey, k: u32) -> Result<Tensor> {
    if key.total() > k {
        return Err(Error::Degree(format!(
            "key {:?} has total {} exceeding the form degree {k}",
            key.parts(),
            key.total()
        )));
    }
    let sets: Vec<_> = key
        .parts()
        .iter()
        .map(|&km| enumerate_multiindices(vars.len(), km))
        .collect();
    let shape = Shape::new(sets.iter().map(|s| s.len()).collect())?;
    let mut cache: HashMap<Vec<u32>, MultiPoly> = HashMap::new();
    let entries = shape
        .indices()
        .map(|idx| {
            let mut total = vec![0u32; vars.len()];
            for (slot, &i) in idx.iter().enumerate() {
                for (t, e) in total.iter_mut().zip(&sets[slot].indices()[i]) {
                    *t += e;
                }
            }
            cache
                .entry(total)
                .or_insert_with_key(|total| f.partial_derive_multi(vars, total))
                .clone()
        })
        .collect();
    Tensor::new(shape, f.vars().clone(), entries)
}

/// The `K`-polarisation form of `f`, homogeneous of degree `k >= |K|` in
/// `vars`. Every entry is a form of degree `k - |K|`. The zero polynomial
/// polarises to a zero tensor.
pub fn polarize<S: AsRef<str>>(f: &MultiPoly, vars: &[S], key: &PolarKey) -> Result<Tensor> {
    let k = f.homogeneous_degree_in(vars)?.unwrap_or(key.total());
    polarize_with_degree(f, vars, key, k)
}

/// Hyperdeterminant of the `K`-polarisation.
pub fn hyperhessian<S: AsRef<str>>(f: &MultiPoly, vars: &[S], key: &PolarKey) -> Result<MultiPoly> {
    hyperdet(&polarize(f, vars, key)?)
}

/// Stacks the `K`-polarisations of the system along a new last axis.
pub fn jacobi_form(system: &SystemOfForms, key: &PolarKey) -> Result<Tensor> {
    let parts: Vec<Tensor> = system
        .forms()
        .iter()
        .map(|f| polarize_with_degree(f, system.vars(), key, system.degree()))
        .collect::<Result<_>>()?;
    let mut dims = parts[0].shape().dims().to_vec();
    dims.push(parts.len());
    let shape = Shape::new(dims)?;
    let m = parts.len();
    let inner = parts[0].shape().size();
    let entries = (0..inner * m)
        .map(|flat| parts[flat % m].entries()[flat / m].clone())
        .collect();
    let vars = vars_of(system.vars());
    Tensor::new(shape, vars, entries)
}

/// Hyperdeterminant of the `(1, ..., 1)`-Jacobi form of a system of forms of
/// common degree `k` (`k` ones).
pub fn hyperresultant(system: &SystemOfForms) -> Result<MultiPoly> {
    let key = PolarKey::full(system.degree())?;
    hyperdet(&jacobi_form(system, &key)?)
}

/// The tensor of all order-`steps` partial derivatives, shape
/// `(n+1)^steps`. Zero steps gives the `1`-shaped tensor holding `f`.
pub fn jacobi_sequence<S: AsRef<str>>(f: &MultiPoly, vars: &[S], steps: u32) -> Result<Tensor> {
    let mut t = Tensor::new(Shape::new(vec![1])?, f.vars().clone(), vec![f.clone()])?;
    for step in 0..steps {
        let n = vars.len();
        let mut dims: Vec<usize> = if step == 0 { vec![] } else { t.shape().dims().to_vec() };
        dims.push(n);
        let prev = t;
        let entries = prev
            .entries()
            .iter()
            .flat_map(|e| vars.iter().map(move |v| e.partial_derive(v.as_ref(), 1)))
            .collect();
        t = Tensor::new(Shape::new(dims)?, prev.vars().clone(), entries)?;
    }
    Ok(t)
}
