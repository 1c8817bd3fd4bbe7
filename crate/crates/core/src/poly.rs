//! Sparse multivariate polynomials over [`Scalar`].
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose ordering is graded
//! lexicographic, so the structure is canonical: two polynomials over the same
//! variable list are equal iff their term maps are equal. Binary operations
//! first align both operands to the union of their variable lists (left
//! operand's order first, then unseen names from the right).

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Vars = Arc<[String]>;

pub fn vars_of<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Exponent vector with cached total degree. The derived ordering compares
/// total degree first and then exponents lexicographically (first variable
/// most significant).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: SmallVec<[u32; 8]>,
}

impl Monomial {
    pub fn new(exps: &[u32]) -> Self {
        Monomial {
            degree: exps.iter().sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            exps,
        })
    }
}

#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, Scalar>,
}

fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn union_vars(a: &Vars, b: &Vars) -> Vars {
    if same_vars(a, b) {
        return a.clone();
    }
    let mut out: Vec<String> = a.to_vec();
    for v in b.iter() {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    if out.len() == a.len() {
        a.clone()
    } else {
        out.into()
    }
}

impl MultiPoly {
    pub fn zero(vars: Vars) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            let m = Monomial::one(p.vars.len());
            p.terms.insert(m, c);
        }
        p
    }

    pub fn int(vars: Vars, n: i64) -> Self {
        MultiPoly::constant(vars, Scalar::int(n))
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: Vars, name: &str) -> Result<Self> {
        let i = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        let mut exps = vec![0; vars.len()];
        exps[i] = 1;
        Ok(MultiPoly::from_terms(vars, [(exps, Scalar::one())]))
    }

    /// Sums the given terms; exponent vectors must match the variable count.
    pub fn from_terms<E, I>(vars: Vars, terms: I) -> Self
    where
        E: AsRef<[u32]>,
        I: IntoIterator<Item = (E, Scalar)>,
    {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            let e = e.as_ref();
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            if c.is_zero() {
                continue;
            }
            accumulate(&mut map, Monomial::new(e), &c);
        }
        map.retain(|_, c| !c.is_zero());
        MultiPoly { vars, terms: map }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree == 0)
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree).max()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|m| m.exps[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    fn partial_degree(&self, m: &Monomial, idx: &[Option<usize>]) -> u32 {
        idx.iter().flatten().map(|&i| m.exps[i]).sum()
    }

    /// Common degree of every term in the named variables; `Ok(None)` for the
    /// zero polynomial, an error if the degrees differ.
    pub fn homogeneous_degree_in<S: AsRef<str>>(&self, names: &[S]) -> Result<Option<u32>> {
        let idx: Vec<_> = names.iter().map(|n| self.var_index(n.as_ref())).collect();
        let mut deg = None;
        for m in self.terms.keys() {
            let d = self.partial_degree(m, &idx);
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::NotHomogeneous(format!(
                        "`{self}` has terms of degree {e} and {d} in ({})",
                        names.iter().map(|n| n.as_ref()).collect::<Vec<_>>().join(",")
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// variable that actually occurs.
    pub fn with_vars(&self, vars: &Vars) -> Result<MultiPoly> {
        if same_vars(&self.vars, vars) {
            return Ok(MultiPoly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            });
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; vars.len()];
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => return Err(Error::UnknownVariable(self.vars[i].clone())),
                }
            }
            terms.insert(Monomial::new(&exps), c.clone());
        }
        Ok(MultiPoly {
            vars: vars.clone(),
            terms,
        })
    }

    /// Drops the listed variables from the variable list when they do not occur.
    pub fn prune_vars<S: AsRef<str>>(&self, names: &[S]) -> MultiPoly {
        let keep: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, v)| {
                !names.iter().any(|n| n.as_ref() == v.as_str())
                    || self.terms.keys().any(|m| m.exps[*i] > 0)
            })
            .map(|(_, v)| v.clone())
            .collect();
        if keep.len() == self.vars.len() {
            return self.clone();
        }
        self.with_vars(&keep.into()).expect("pruned variables are unused")
    }

    pub fn align<'a>(a: &'a MultiPoly, b: &'a MultiPoly) -> (Cow<'a, MultiPoly>, Cow<'a, MultiPoly>) {
        if same_vars(&a.vars, &b.vars) {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let u = union_vars(&a.vars, &b.vars);
        let a2 = if same_vars(&a.vars, &u) {
            Cow::Borrowed(a)
        } else {
            Cow::Owned(a.with_vars(&u).unwrap())
        };
        let b2 = Cow::Owned(b.with_vars(&u).unwrap());
        (a2, b2)
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.vars.clone(), Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Iterated formal partial derivative `d^order / d var^order`, with no
    /// factorial normalisation. Variables not in the list give zero.
    pub fn partial_derive(&self, var: &str, order: u32) -> MultiPoly {
        let Some(i) = self.var_index(var) else {
            return if order == 0 {
                self.clone()
            } else {
                MultiPoly::zero(self.vars.clone())
            };
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps[i];
            if e < order {
                continue;
            }
            let falling: i64 = (0..order).map(|j| (e - j) as i64).product();
            let mut exps = m.exps.clone();
            exps[i] -= order;
            terms.insert(
                Monomial {
                    degree: m.degree - order,
                    exps,
                },
                c * &Scalar::int(falling),
            );
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Applies `d^{e_i}/d x_i^{e_i}` for every variable named in `multi`.
    pub fn partial_derive_multi<S: AsRef<str>>(&self, vars: &[S], multi: &[u32]) -> MultiPoly {
        vars.iter()
            .zip(multi)
            .fold(self.clone(), |p, (v, &e)| p.partial_derive(v.as_ref(), e))
    }

    /// Exact quotient `self / q`, or [`Error::NotDivisible`].
    pub fn exact_div(&self, q: &MultiPoly) -> Result<MultiPoly> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (p, q) = MultiPoly::align(self, q);
        let (lm, lc) = q.leading_term().unwrap();
        let lc_inv = lc.inv().unwrap();
        let mut rem = p.terms.clone();
        let mut quot: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            let Some(tm) = m.checked_div(lm) else {
                return Err(Error::NotDivisible);
            };
            let tc = c * &lc_inv;
            for (qm, qc) in &q.terms {
                let prod = &tc * qc;
                accumulate(&mut rem, tm.mul(qm), &-prod);
            }
            // the leading term cancels exactly; clear any zeros left behind
            rem.retain(|_, c| !c.is_zero());
            quot.insert(tm, tc);
        }
        Ok(MultiPoly {
            vars: p.vars.clone(),
            terms: quot,
        })
    }

    /// Substitutes polynomials for variables. Variables without an
    /// assignment are kept; the result lives over the union of the remaining
    /// variables and the assigned polynomials' variables.
    pub fn substitute(&self, assignment: &HashMap<&str, MultiPoly>) -> MultiPoly {
        let mut target: Vars = self
            .vars
            .iter()
            .filter(|v| !assignment.contains_key(v.as_str()))
            .cloned()
            .collect::<Vec<_>>()
            .into();
        for v in self.vars.iter() {
            if let Some(p) = assignment.get(v.as_str()) {
                target = union_vars(&target, &p.vars);
            }
        }
        let images: Vec<MultiPoly> = self
            .vars
            .iter()
            .map(|v| match assignment.get(v.as_str()) {
                Some(p) => p.with_vars(&target).unwrap(),
                None => MultiPoly::var(target.clone(), v).unwrap(),
            })
            .collect();
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::int(target.clone(), 1), p.clone()])
            .collect();
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut prod = MultiPoly::constant(target.clone(), c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                prod = &prod * &powers[i][e as usize];
                if prod.is_zero() {
                    break;
                }
            }
            for (pm, pc) in prod.terms {
                accumulate(&mut acc, pm, &pc);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly {
            vars: target,
            terms: acc,
        }
    }

    /// Evaluates at scalar values; unassigned variables remain symbolic.
    pub fn eval(&self, values: &HashMap<&str, Scalar>) -> MultiPoly {
        let assignment = values
            .iter()
            .map(|(k, v)| (*k, MultiPoly::constant(Vars::from(Vec::new()), v.clone())))
            .collect();
        self.substitute(&assignment)
    }

    /// Sets `set_one = 1`, leaving a polynomial in `keep` (and any coefficient
    /// variables).
    pub fn dehomogenize(&self, keep: &str, set_one: &str) -> Result<MultiPoly> {
        if keep == set_one {
            return Err(Error::InvalidArgument(format!(
                "cannot keep and eliminate the same variable `{keep}`"
            )));
        }
        for name in [keep, set_one] {
            if self.var_index(name).is_none() {
                return Err(Error::UnknownVariable(name.to_string()));
            }
        }
        let i = self.var_index(set_one).unwrap();
        let vars: Vars = self
            .vars
            .iter()
            .filter(|v| v.as_str() != set_one)
            .cloned()
            .collect::<Vec<_>>()
            .into();
        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = m.exps.to_vec();
            exps.remove(i);
            accumulate(&mut acc, Monomial::new(&exps), c);
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { vars, terms: acc })
    }

    /// Coefficients `[c_0, ..., c_d]` of `x^(d-i) y^i` for a form of degree
    /// `d` in `(x, y)`; each coefficient keeps this polynomial's variable list
    /// (with `x`, `y` absent from its terms). The zero polynomial is accepted.
    pub fn binary_coefficients(&self, x: &str, y: &str, d: u32) -> Result<Vec<MultiPoly>> {
        let ix = self.var_index(x);
        let iy = self.var_index(y);
        let mut out = vec![BTreeMap::new(); d as usize + 1];
        for (m, c) in &self.terms {
            let ex = ix.map_or(0, |i| m.exps[i]);
            let ey = iy.map_or(0, |i| m.exps[i]);
            if ex + ey != d {
                return Err(Error::NotHomogeneous(format!(
                    "`{self}` is not a form of degree {d} in ({x},{y})"
                )));
            }
            let mut exps = m.exps.to_vec();
            for i in [ix, iy].into_iter().flatten() {
                exps[i] = 0;
            }
            out[ey as usize].insert(Monomial::new(&exps), c.clone());
        }
        Ok(out
            .into_iter()
            .map(|terms| MultiPoly {
                vars: self.vars.clone(),
                terms,
            })
            .collect())
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => o.get_mut().add_assign_ref(c),
    }
}

fn mul_aligned(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() || b.is_zero() {
        return MultiPoly::zero(a.vars.clone());
    }
    let (small, large) = if a.terms.len() <= b.terms.len() {
        (a, b)
    } else {
        (b, a)
    };
    let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(large.terms.len() * 2);
    for (ms, cs) in &small.terms {
        for (ml, cl) in &large.terms {
            let c = cs * cl;
            match acc.entry(ms.mul(ml)) {
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::hash_map::Entry::Occupied(mut o) => o.get_mut().add_assign_ref(&c),
            }
        }
    }
    MultiPoly {
        vars: a.vars.clone(),
        terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = MultiPoly::align(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::align(self, rhs);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut terms, m.clone(), c);
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly {
            vars: a.vars.clone(),
            terms,
        }
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::align(self, rhs);
        mul_aligned(&a, &b)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for MultiPoly {
    /// Canonical rendering: terms in descending graded-lex order, explicit
    /// `*`, `^` for powers, e.g. `3*x^2*y - 1/2*y^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mut powers = Vec::new();
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => powers.push(self.vars[i].clone()),
                    _ => powers.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            let negative = c.is_negative_rational();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if powers.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&powers.join("*"))?;
            } else {
                write!(f, "{mag}*{}", powers.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vars {
        vars_of(&["x", "y"])
    }

    fn x() -> MultiPoly {
        MultiPoly::var(xy(), "x").unwrap()
    }

    fn y() -> MultiPoly {
        MultiPoly::var(xy(), "y").unwrap()
    }

    fn c(n: i64) -> MultiPoly {
        MultiPoly::int(xy(), n)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(p, &x().pow(2) - &y().pow(2));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn zero_absorbs() {
        assert!((&(&x() + &y()) * &c(0)).is_zero());
    }

    #[test]
    fn binomial_square_matches_termwise_expansion() {
        let sq = (&x() + &y()).pow(2);
        // expand sum_{i+j=2} C(2,i) x^i y^j by hand
        let oracle = MultiPoly::from_terms(
            xy(),
            [
                (vec![2, 0], Scalar::int(1)),
                (vec![1, 1], Scalar::int(2)),
                (vec![0, 2], Scalar::int(1)),
            ],
        );
        assert_eq!(sq, oracle);
        assert_eq!(sq.to_string(), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn derivatives() {
        let vars = vars_of(&["c30", "x", "y"]);
        let f = &MultiPoly::var(vars.clone(), "c30").unwrap() * &MultiPoly::var(vars.clone(), "x").unwrap().pow(3);
        assert_eq!(f.partial_derive("x", 3).to_string(), "6*c30");
        assert!(y().pow(2).partial_derive("x", 1).is_zero());
        let x2y2 = &x().pow(2) * &y().pow(2);
        let step = x2y2
            .partial_derive("x", 1)
            .partial_derive("x", 1)
            .partial_derive("y", 1)
            .partial_derive("y", 1);
        assert_eq!(step, c(4));
        assert_eq!(x2y2.partial_derive_multi(&["x", "y"], &[2, 2]), c(4));
    }

    #[test]
    fn exact_division() {
        let p = &x().pow(2) - &y().pow(2);
        assert_eq!(p.exact_div(&(&x() - &y())).unwrap(), &x() + &y());
        let q = &x().pow(2) + &y().pow(2);
        assert_eq!(q.exact_div(&(&x() - &y())), Err(Error::NotDivisible));
        assert_eq!(q.exact_div(&q).unwrap(), c(1));
        assert_eq!(q.exact_div(&c(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn evaluation_and_substitution() {
        let p = &x().pow(2) - &y().pow(2);
        let v = p.eval(&HashMap::from([("x", Scalar::int(3)), ("y", Scalar::int(2))]));
        assert_eq!(v.constant_value(), Some(Scalar::int(5)));
        assert!(c(0).eval(&HashMap::new()).is_zero());

        // x -> a x + b y, y -> c x + d y with numeric g
        let g = HashMap::from([
            ("x", &c(2) * &x() + &c(1) * &y()),
            ("y", &c(-1) * &x() + &c(3) * &y()),
        ]);
        let fx = p.substitute(&g);
        assert_eq!(fx.homogeneous_degree_in(&["x", "y"]).unwrap(), Some(2));
        // oracle: (2x+y)^2 - (-x+3y)^2 by multiplication
        let a = &c(2) * &x() + &c(1) * &y();
        let b = &c(-1) * &x() + &c(3) * &y();
        assert_eq!(fx, &(&a * &a) - &(&b * &b));
    }

    #[test]
    fn dehomogenize_sets_one() {
        let p = &x().pow(2) - &y().pow(2);
        let d = p.dehomogenize("x", "y").unwrap();
        assert_eq!(d.to_string(), "x^2 - 1");
        assert_eq!(d.vars().len(), 1);
        assert_eq!((&x() * &y()).dehomogenize("x", "y").unwrap().to_string(), "x");
        let vars = vars_of(&["c40", "c04", "x", "y"]);
        let v = |n: &str| MultiPoly::var(vars.clone(), n).unwrap();
        let f = &(&v("c40") * &v("x").pow(4)) + &(&v("c04") * &v("y").pow(4));
        assert_eq!(f.dehomogenize("x", "y").unwrap().to_string(), "c40*x^4 + c04");
        assert!(p.dehomogenize("x", "x").is_err());
        assert!(p.dehomogenize("x", "z").is_err());
    }

    #[test]
    fn euler_identity() {
        let f = &(&c(3) * &x().pow(3)) + &(&(&c(-2) * &x()) * &y().pow(2));
        let lhs = &(&x() * &f.partial_derive("x", 1)) + &(&y() * &f.partial_derive("y", 1));
        assert_eq!(lhs, f.scale(&Scalar::int(3)));
    }

    #[test]
    fn alignment_across_variable_lists() {
        let a = MultiPoly::var(vars_of(&["x"]), "x").unwrap();
        let b = MultiPoly::var(vars_of(&["y"]), "y").unwrap();
        let s = &a + &b;
        assert_eq!(s.vars().as_ref(), &["x".to_string(), "y".to_string()]);
        let t = &b + &a;
        assert_eq!(s, t);
        assert_eq!(t.to_string(), "y + x");
    }

    #[test]
    fn rendering() {
        let p = MultiPoly::from_terms(
            xy(),
            [
                (vec![2, 1], Scalar::int(3)),
                (vec![0, 3], Scalar::ratio(-1, 2)),
            ],
        );
        assert_eq!(p.to_string(), "3*x^2*y - 1/2*y^3");
        assert_eq!((-&p).to_string(), "-3*x^2*y + 1/2*y^3");
        assert_eq!(c(0).to_string(), "0");
        assert_eq!(c(-7).to_string(), "-7");
    }

    #[test]
    fn homogeneity_checks() {
        let p = &x().pow(2) + &y();
        assert!(p.homogeneous_degree_in(&["x", "y"]).is_err());
        assert_eq!(c(0).homogeneous_degree_in(&["x", "y"]).unwrap(), None);
        let coeffs = (&(&c(2) * &x().pow(2)) - &(&x() * &y()))
            .binary_coefficients("x", "y", 2)
            .unwrap();
        assert_eq!(coeffs, vec![c(2), c(-1), c(0)]);
    }
}
