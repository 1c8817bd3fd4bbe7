//! Decomposition of `d`-tensors into `eps^k`-skew components, and Gramm
//! forms of vector tuples under a `d`-linear form.
//!
//! The symmetric group permutes the coordinates of `V^{(x)d}`; each orbit is
//! the set of distinct arrangements of one multiset of indices, listed in
//! lexicographic order. With `eps` a primitive `d!`-th root of unity, the
//! `k`-th component keeps the coordinates whose arrangement with ordinal `j`
//! equals `eps^{k j}` times the ordinal-0 coordinate. An orbit of size `s`
//! carries such coordinates only when `d!` divides `k s`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hyperdet::{hyperdet, hyperdet_degree};
use crate::poly::MultiPoly;
use crate::scalar::Scalar;
use crate::tensor::{Shape, Tensor};

/// One symmetric-group orbit of index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// The multiset, sorted ascending.
    pub multiset: Vec<usize>,
    /// Distinct arrangements in lexicographic order; position is the ordinal.
    pub arrangements: Vec<Vec<usize>>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.arrangements.len()
    }

    pub fn ordinal(&self, arrangement: &[usize]) -> Option<usize> {
        self.arrangements.binary_search_by(|a| a.as_slice().cmp(arrangement)).ok()
    }
}

#[derive(Clone, Debug)]
pub struct OrbitTable {
    d: usize,
    dim: usize,
    orbits: Vec<Orbit>,
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl OrbitTable {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d!`, the order of the root of unity `eps`.
    pub fn root_order(&self) -> usize {
        factorial(self.d)
    }

    /// Orbits ordered by their sorted multisets.
    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    pub fn orbit_of(&self, multiset: &[usize]) -> Option<&Orbit> {
        let mut key = multiset.to_vec();
        key.sort_unstable();
        self.orbits.iter().find(|o| o.multiset == key)
    }

    /// Whether orbit `o` contributes to component `k`: `d! | k s`.
    pub fn admissible(&self, o: &Orbit, k: usize) -> bool {
        (k * o.size()).is_multiple_of(self.root_order())
    }

    /// Dimension of the `k`-th component: the number of admissible orbits.
    pub fn component_dimension(&self, k: usize) -> usize {
        self.orbits.iter().filter(|o| self.admissible(o, k)).count()
    }
}

/// Orbit table of `d`-tuples over `0..dim`, for `2 <= d <= 4`,
/// `1 <= dim <= 4`.
pub fn orbit_ord(d: usize, dim: usize) -> Result<OrbitTable> {
    if !(2..=4).contains(&d) {
        return Err(Error::InvalidArgument(format!("tensor order d = {d} must lie in 2..=4")));
    }
    if !(1..=4).contains(&dim) {
        return Err(Error::InvalidArgument(format!("dimension {dim} must lie in 1..=4")));
    }
    let shape = Shape::new(vec![dim; d])?;
    let mut by_multiset: BTreeMap<Vec<usize>, Vec<Vec<usize>>> = BTreeMap::new();
    // row-major order is lexicographic, so arrangements arrive sorted
    for idx in shape.indices() {
        let mut key = idx.clone();
        key.sort_unstable();
        by_multiset.entry(key).or_default().push(idx);
    }
    let orbits = by_multiset
        .into_iter()
        .map(|(multiset, arrangements)| Orbit {
            multiset,
            arrangements,
        })
        .collect();
    Ok(OrbitTable { d, dim, orbits })
}

fn hypercube(t: &Tensor) -> Result<(usize, usize)> {
    let dims = t.shape().dims();
    if !t.shape().is_hypercubic() {
        return Err(Error::Dimension(format!(
            "expected a hypercubic tensor, got shape {}",
            t.shape()
        )));
    }
    Ok((dims.len(), dims[0]))
}

/// Projection of a hypercubic `dim^d` tensor onto its `eps^k`-skew
/// component, `0 <= k < d!`. On an admissible orbit of size `s` the output at
/// ordinal `j` is `eps^{k j} / s * sum_{j'} eps^{-k j'} t[j']`; other orbits
/// are zeroed.
pub fn project_k(t: &Tensor, k: usize) -> Result<Tensor> {
    let (d, dim) = hypercube(t)?;
    let table = orbit_ord(d, dim)?;
    project_with(&table, t, k)
}

pub fn project_with(table: &OrbitTable, t: &Tensor, k: usize) -> Result<Tensor> {
    let order = table.root_order();
    if k >= order {
        return Err(Error::InvalidArgument(format!("component k = {k} must be below {order}")));
    }
    let (d, dim) = hypercube(t)?;
    if (d, dim) != (table.d, table.dim) {
        return Err(Error::Dimension(format!(
            "orbit table is for {}^{}, tensor has shape {}",
            table.dim,
            table.d,
            t.shape()
        )));
    }
    let eps = |e: i64| Scalar::zeta_pow(order as u32, e);
    let shape = t.shape();
    let mut entries = vec![MultiPoly::zero(t.vars().clone()); shape.size()];
    for orbit in table.orbits.iter().filter(|o| table.admissible(o, k)) {
        let s = orbit.size() as i64;
        let mut avg = MultiPoly::zero(t.vars().clone());
        for (j, arr) in orbit.arrangements.iter().enumerate() {
            avg = &avg + &t.get(arr).scale(&eps(-((k * j) as i64)));
        }
        let avg = avg.scale(&Scalar::ratio(1, s));
        for (j, arr) in orbit.arrangements.iter().enumerate() {
            entries[shape.flat_index(arr)] = avg.scale(&eps((k * j) as i64));
        }
    }
    Tensor::new(shape.clone(), t.vars().clone(), entries)
}

/// The `m^d` tensor `F(u_{i_1}, ..., u_{i_d})` of a `d`-linear form `F`
/// (shape `dim^d`) on a tuple of `m` vectors of length `dim`.
pub fn gramm_tensor(f: &Tensor, tuple: &[Vec<Scalar>]) -> Result<Tensor> {
    let (d, dim) = hypercube(f)?;
    if tuple.is_empty() {
        return Err(Error::InvalidArgument("empty vector tuple".into()));
    }
    if let Some(u) = tuple.iter().find(|u| u.len() != dim) {
        return Err(Error::Dimension(format!(
            "vector of length {} does not match form dimension {dim}",
            u.len()
        )));
    }
    let mut t = f.clone();
    for axis in 0..d {
        t = t.apply_matrix(axis, tuple)?;
    }
    Ok(t)
}

/// `base^exponent`, kept unevaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrammValue {
    pub base: MultiPoly,
    pub exponent: BigRational,
}

impl GrammValue {
    /// Compares `a^(p/q)` with `b^(r/s)` by raising both sides to the
    /// smallest integer powers that clear the exponents.
    pub fn cross_eq(&self, other: &GrammValue) -> bool {
        let (p, q) = (self.exponent.numer(), self.exponent.denom());
        let (r, s) = (other.exponent.numer(), other.exponent.denom());
        let lhs = p * s;
        let rhs = r * q;
        let g = lhs.gcd(&rhs);
        if g.is_zero() {
            return true;
        }
        let ea: u32 = (lhs / &g).try_into().expect("exponent too large");
        let eb: u32 = (rhs / &g).try_into().expect("exponent too large");
        self.base.pow(ea) == other.base.pow(eb)
    }
}

impl fmt::Display for GrammValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^({})", self.base, self.exponent)
    }
}

fn gramm_value(t: &Tensor, d: usize, m: usize) -> Result<GrammValue> {
    let base = hyperdet(t)?;
    let deg = hyperdet_degree(t.shape()).expect("supported format has a degree");
    let exponent = BigRational::new((m as i64).into(), ((d as u32 * deg) as i64).into());
    Ok(GrammValue { base, exponent })
}

/// The `d`-Gramm form: the hyperdeterminant of the Gramm tensor, to the power
/// `m / (d deg D)`.
pub fn gramm_form(f: &Tensor, tuple: &[Vec<Scalar>]) -> Result<GrammValue> {
    let t = gramm_tensor(f, tuple)?;
    gramm_value(&t, f.shape().rank(), tuple.len())
}

/// The `k`-skew Gramm form: as [`gramm_form`], on the `eps^k`-skew component
/// of the Gramm tensor.
pub fn skew_gramm(f: &Tensor, tuple: &[Vec<Scalar>], k: usize) -> Result<GrammValue> {
    let t = project_k(&gramm_tensor(f, tuple)?, k)?;
    gramm_value(&t, f.shape().rank(), tuple.len())
}

/// Rank of a matrix of scalars by Gaussian elimination.
pub fn matrix_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().unwrap();
        let pivot: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let factor = row[col].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, pv) in row.iter_mut().zip(&pivot) {
                *x = &*x - &(&factor * pv);
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// The matrix of `project_k` on `V^{(x)d}` in the standard basis (one row
/// per image of a basis tensor).
pub fn projector_matrix(table: &OrbitTable, k: usize) -> Result<Vec<Vec<Scalar>>> {
    let shape = Shape::new(vec![table.dim; table.d])?;
    let n = shape.size();
    (0..n)
        .map(|i| {
            let basis: Vec<Scalar> = (0..n).map(|j| Scalar::int((i == j) as i64)).collect();
            let img = project_with(table, &Tensor::from_scalars(shape.dims(), &basis)?, k)?;
            Ok(img
                .entries()
                .iter()
                .map(|e| e.constant_value().unwrap_or_else(Scalar::zero))
                .collect())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    fn sample_tensor(dims: &[usize], seed: i64) -> Tensor {
        let n: usize = dims.iter().product();
        let vals: Vec<i64> = (0..n as i64).map(|i| ((i * 7 + seed) * (i + 3)) % 19 - 9).collect();
        Tensor::from_ints(dims, &vals).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let t = orbit_ord(3, 3).unwrap();
        let o = t.orbit_of(&[0, 0, 1]).unwrap();
        assert_eq!(o.arrangements, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(o.ordinal(&[1, 0, 0]), Some(2));
        assert_eq!(t.orbit_of(&[2, 0, 1]).unwrap().size(), 6);
        let t2 = orbit_ord(2, 2).unwrap();
        assert_eq!(t2.orbit_of(&[0, 0]).unwrap().size(), 1);
        assert!(orbit_ord(5, 2).is_err());
        assert!(orbit_ord(1, 2).is_err());
    }

    #[test]
    fn orbit_sizes_sum_to_full_space() {
        for d in 2..=4 {
            for dim in 1..=4 {
                let t = orbit_ord(d, dim).unwrap();
                let total: usize = t.orbits().iter().map(Orbit::size).sum();
                assert_eq!(total, dim.pow(d as u32));
                for o in t.orbits() {
                    let mult: usize = (0..dim)
                        .map(|i| factorial(o.multiset.iter().filter(|&&x| x == i).count()))
                        .product();
                    assert_eq!(o.size(), factorial(d) / mult);
                    assert!(o.arrangements.windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn component_dimensions_for_cubes_of_three() {
        let t = orbit_ord(3, 3).unwrap();
        let dims: Vec<usize> = (0..6).map(|k| t.component_dimension(k)).collect();
        assert_eq!(dims, [10, 1, 7, 1, 7, 1]);
        let ranks: Vec<usize> = (0..6)
            .map(|k| matrix_rank(projector_matrix(&t, k).unwrap()))
            .collect();
        assert_eq!(ranks, [10, 1, 7, 1, 7, 1]);
    }

    #[test]
    fn projectors_resolve_identity() {
        let a = sample_tensor(&[3, 3, 3], 4);
        let parts: Vec<Tensor> = (0..6).map(|k| project_k(&a, k).unwrap()).collect();
        let mut sum = parts[0].clone();
        for p in &parts[1..] {
            let entries = sum.entries().iter().zip(p.entries()).map(|(x, y)| x + y).collect();
            sum = Tensor::new(sum.shape().clone(), sum.vars().clone(), entries).unwrap();
        }
        assert_eq!(sum, a);
        for (k, pk) in parts.iter().enumerate() {
            for j in 0..6 {
                let twice = project_k(pk, j).unwrap();
                if j == k {
                    assert_eq!(&twice, pk);
                } else {
                    assert!(twice.is_zero(), "p{j} p{k} != 0");
                }
            }
        }
    }

    #[test]
    fn antisymmetric_part_lives_on_distinct_indices() {
        let a = sample_tensor(&[3, 3, 3], 11);
        let p3 = project_k(&a, 3).unwrap();
        let table = orbit_ord(3, 3).unwrap();
        let o = table.orbit_of(&[0, 1, 2]).unwrap();
        for idx in p3.shape().indices() {
            if table.orbit_of(&idx).unwrap() != o {
                assert!(p3.get(&idx).is_zero());
            }
        }
        let base = p3.get(&o.arrangements[0]).clone();
        for (j, arr) in o.arrangements.iter().enumerate() {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            assert_eq!(*p3.get(arr), base.scale(&Scalar::int(sign)));
        }
    }

    #[test]
    fn projections_satisfy_skew_relation() {
        let a = sample_tensor(&[3, 3, 3], 2);
        let table = orbit_ord(3, 3).unwrap();
        for k in 0..6 {
            let p = project_k(&a, k).unwrap();
            for o in table.orbits().iter().filter(|o| table.admissible(o, k)) {
                let first = p.get(&o.arrangements[0]).clone();
                for (j, arr) in o.arrangements.iter().enumerate() {
                    let w = Scalar::zeta_pow(6, (k * j) as i64);
                    assert_eq!(*p.get(arr), first.scale(&w));
                }
            }
        }
    }

    #[test]
    fn k0_is_symmetrisation() {
        let a = sample_tensor(&[2, 2], 5);
        let p = project_k(&a, 0).unwrap();
        let avg = (a.get(&[0, 1]) + a.get(&[1, 0])).scale(&Scalar::ratio(1, 2));
        assert_eq!(*p.get(&[0, 1]), avg);
        assert_eq!(*p.get(&[1, 0]), avg);
        assert_eq!(p.get(&[0, 0]), a.get(&[0, 0]));
    }

    #[test]
    fn gramm_tensor_examples() {
        let id = Tensor::from_ints(&[2, 2], &[1, 0, 0, 1]).unwrap();
        let e = vec![ints(&[1, 0]), ints(&[0, 1])];
        assert_eq!(gramm_tensor(&id, &e).unwrap(), id);
        let with_zero = gramm_tensor(&id, &[ints(&[3, 1]), ints(&[0, 0])]).unwrap();
        assert!(with_zero.get(&[1, 0]).is_zero() && with_zero.get(&[0, 1]).is_zero());
        assert!(with_zero.get(&[1, 1]).is_zero());

        let mut vals = vec![0; 8];
        vals[0] = 1;
        let f = Tensor::from_ints(&[2, 2, 2], &vals).unwrap();
        let u = [ints(&[2, 5]), ints(&[-3, 1])];
        let g = gramm_tensor(&f, &u).unwrap();
        for idx in g.shape().indices() {
            let want: i64 = idx.iter().map(|&i| if i == 0 { 2 } else { -3 }).product();
            assert_eq!(g.get(&idx).constant_value(), Some(Scalar::int(want)));
        }
        assert!(gramm_tensor(&f, &[ints(&[1, 2, 3])]).is_err());
    }

    #[test]
    fn gramm_form_examples() {
        let id = Tensor::from_ints(&[2, 2], &[1, 0, 0, 1]).unwrap();
        let g = gramm_form(&id, &[ints(&[1, 0]), ints(&[0, 1])]).unwrap();
        assert_eq!(g.base.to_string(), "1");
        assert_eq!(g.exponent, BigRational::new(1.into(), 2.into()));
        let dep = gramm_form(&id, &[ints(&[1, 2]), ints(&[-2, -4])]).unwrap();
        assert!(dep.base.is_zero());

        let f3 = sample_tensor(&[2, 2, 2], 1);
        let dep3 = gramm_form(&f3, &[ints(&[2, -1]), ints(&[-6, 3])]).unwrap();
        assert!(dep3.base.is_zero());
        assert_eq!(dep3.exponent, BigRational::new(1.into(), 6.into()));
    }

    #[test]
    fn gramm_matrix_transforms_by_congruence() {
        let f = sample_tensor(&[3, 3], 8);
        let u = vec![ints(&[1, -2, 0]), ints(&[3, 1, 4]), ints(&[0, 2, -1])];
        let g = [[2i64, 1, 0], [-1, 3, 1], [0, 1, 1]];
        let gu: Vec<Vec<Scalar>> = g
            .iter()
            .map(|row| {
                (0..3)
                    .map(|c| row.iter().zip(&u).fold(Scalar::zero(), |acc, (&w, v)| acc + Scalar::int(w) * v[c].clone()))
                    .collect()
            })
            .collect();
        let big = gramm_tensor(&f, &u).unwrap();
        let mixed = gramm_tensor(&f, &gu).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut want = MultiPoly::zero(big.vars().clone());
                for a in 0..3 {
                    for b in 0..3 {
                        want = &want + &big.get(&[a, b]).scale(&Scalar::int(g[i][a] * g[j][b]));
                    }
                }
                assert_eq!(*mixed.get(&[i, j]), want);
            }
        }
        let det_g = 2 * (3 - 1) - -1;
        let base = gramm_form(&f, &u).unwrap().base;
        let moved = gramm_form(&f, &gu).unwrap();
        assert_eq!(moved.base, base.scale(&Scalar::int(det_g * det_g)));
    }

    #[test]
    fn skew_gramm_examples() {
        let sym = Tensor::from_ints(&[2, 2], &[1, 3, 3, -2]).unwrap();
        let u = [ints(&[1, 2]), ints(&[0, 5])];
        assert!(skew_gramm(&sym, &u, 1).unwrap().base.is_zero());

        let f = Tensor::from_ints(&[2, 2], &[1, 4, -2, 3]).unwrap();
        let g = gramm_tensor(&f, &u).unwrap();
        let anti = (g.get(&[0, 1]) - g.get(&[1, 0])).scale(&Scalar::ratio(1, 2));
        assert_eq!(skew_gramm(&f, &u, 1).unwrap().base, &anti * &anti);

        let s0 = skew_gramm(&f, &u, 0).unwrap();
        let symm = project_k(&f, 0).unwrap();
        assert_eq!(s0, gramm_form(&symm, &u).unwrap());
    }

    #[test]
    fn cross_powering() {
        let c = |n: i64| MultiPoly::int(crate::poly::vars_of::<&str>(&[]), n);
        let a = GrammValue { base: c(4), exponent: BigRational::new(1.into(), 2.into()) };
        let b = GrammValue { base: c(2), exponent: BigRational::new(1.into(), 1.into()) };
        let e = GrammValue { base: c(8), exponent: BigRational::new(1.into(), 3.into()) };
        assert!(a.cross_eq(&b));
        assert!(a.cross_eq(&e));
        assert!(!b.cross_eq(&GrammValue { base: c(3), ..b.clone() }));
    }

    #[test]
    fn non_hypercubic_rejected() {
        let t = Tensor::from_ints(&[2, 3], &[0; 6]).unwrap();
        assert!(project_k(&t, 0).is_err());
        assert!(project_k(&sample_tensor(&[2, 2], 0), 2).is_err());
    }
}
