//! Determinants, binary-form discriminants and hyperdeterminants of the
//! small formats the polarisation constructions produce.
//!
//! Hyperdeterminants are computed by Schläfli's method: one axis is
//! contracted against fresh auxiliary variables, the hyperdeterminant (or
//! determinant) of the resulting pencil is taken, and then the discriminant
//! of that form in the auxiliary variables.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;

use crate::classical::sylvester_resultant;
use crate::error::{Error, Result};
use crate::poly::{vars_of, MultiPoly, Vars};
use crate::scalar::Scalar;
use crate::tensor::{Shape, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatKind {
    SquareMatrix,
    SupportedHyperdet,
    AdmissibleUnimplemented,
    Nonexistent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatClass {
    pub shape: Shape,
    pub kind: FormatKind,
}

/// The hyperdeterminant of an `n_1 x ... x n_d` format exists iff
/// `n_i - 1 <= sum_{j != i} (n_j - 1)` for every `i`.
pub fn hyperdet_exists(shape: &Shape) -> bool {
    let total: usize = shape.dims().iter().map(|n| n - 1).sum();
    shape.dims().iter().all(|n| 2 * (n - 1) <= total)
}

fn squeezed_dims(shape: &Shape) -> Vec<usize> {
    shape.dims().iter().copied().filter(|&n| n > 1).collect()
}

pub fn classify(shape: &Shape) -> FormatClass {
    let kind = if !hyperdet_exists(shape) {
        FormatKind::Nonexistent
    } else {
        let mut dims = squeezed_dims(shape);
        dims.sort_unstable();
        match dims.as_slice() {
            [] => FormatKind::SquareMatrix,
            [a, b] if a == b => FormatKind::SquareMatrix,
            [2, 2, 2] | [2, 2, 3] | [2, 2, 2, 2] => FormatKind::SupportedHyperdet,
            _ => FormatKind::AdmissibleUnimplemented,
        }
    };
    FormatClass {
        shape: shape.clone(),
        kind,
    }
}

/// Degree of the hyperdeterminant in the tensor entries, for the formats
/// [`hyperdet`] supports.
pub fn hyperdet_degree(shape: &Shape) -> Option<u32> {
    if !hyperdet_exists(shape) {
        return None;
    }
    let mut dims = squeezed_dims(shape);
    dims.sort_unstable();
    match dims.as_slice() {
        [] => Some(1),
        [a, b] if a == b => Some(*a as u32),
        [2, 2, 2] => Some(4),
        [2, 2, 3] => Some(6),
        [2, 2, 2, 2] => Some(24),
        _ => None,
    }
}

fn fresh_names(vars: &Vars, count: usize) -> Vec<String> {
    (0..)
        .map(|level| (0..count).map(|i| format!("_s{level}_{i}")).collect::<Vec<_>>())
        .find(|names| names.iter().all(|n| !vars.contains(n)))
        .unwrap()
}

fn align_all(rows: &mut [Vec<MultiPoly>]) {
    let mut all: Vec<String> = Vec::new();
    for e in rows.iter().flatten() {
        for v in e.vars().iter() {
            if !all.contains(v) {
                all.push(v.clone());
            }
        }
    }
    let vars: Vars = all.into();
    for e in rows.iter_mut().flatten() {
        *e = e.with_vars(&vars).unwrap();
    }
}

/// Determinant of a square matrix of polynomials: cofactor formulas up to
/// 3x3, fraction-free Bareiss elimination beyond.
pub fn det_matrix(mut rows: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("determinant needs a square matrix".into()));
    }
    if n == 0 {
        return Ok(MultiPoly::int(vars_of::<&str>(&[]), 1));
    }
    align_all(&mut rows);
    let a = |i: usize, j: usize| &rows[i][j];
    Ok(match n {
        1 => a(0, 0).clone(),
        2 => &(a(0, 0) * a(1, 1)) - &(a(0, 1) * a(1, 0)),
        3 => {
            let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
                &(a(r1, c1) * a(r2, c2)) - &(a(r1, c2) * a(r2, c1))
            };
            let t0 = a(0, 0) * &minor(1, 2, 1, 2);
            let t1 = a(0, 1) * &minor(1, 2, 0, 2);
            let t2 = a(0, 2) * &minor(1, 2, 0, 1);
            &(&t0 - &t1) + &t2
        }
        _ => bareiss(rows),
    })
}

fn bareiss(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    let vars = m[0][0].vars().clone();
    let mut negate = false;
    let mut prev = MultiPoly::int(vars.clone(), 1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return MultiPoly::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant of a `k x k` tensor.
pub fn det_square(t: &Tensor) -> Result<MultiPoly> {
    match t.shape().dims() {
        [a, b] if a == b => det_matrix(t.matrix_rows()?),
        _ => Err(Error::Dimension(format!(
            "determinant needs a square matrix, got shape {}",
            t.shape()
        ))),
    }
}

/// `(-1)^(d(d-1)/2) * Res(f_x, f_y) / d^(d-2)` for the generic form
/// `sum_i a_i x^(d-i) y^i`, over variables `a0..ad`.
fn generic_disc(d: u32) -> Arc<MultiPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<MultiPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut names: Vec<String> = (0..=d).map(|i| format!("a{i}")).collect();
    names.push("x".into());
    names.push("y".into());
    let vars = vars_of(&names);
    let v = |n: &str| MultiPoly::var(vars.clone(), n).unwrap();
    let f = (0..=d).fold(MultiPoly::zero(vars.clone()), |acc, i| {
        let term = &(&v(&format!("a{i}")) * &v("x").pow(d - i)) * &v("y").pow(i);
        &acc + &term
    });
    let res = sylvester_resultant(&f.partial_derive("x", 1), &f.partial_derive("y", 1), "x", "y")
        .expect("generic partials are nonzero forms");
    let sign = if (d * (d - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let norm = BigRational::new(sign.into(), num_bigint::BigInt::from(d).pow(d - 2));
    let disc = Arc::new(res.scale(&Scalar::Rat(norm)).prune_vars(&["x", "y"]));
    cache.lock().unwrap().insert(d, disc.clone());
    disc
}

/// Discriminant of a binary form of known degree `d >= 2` in `(x, y)`; the
/// zero form has discriminant zero. Coefficients may involve other variables.
pub fn binary_form_disc_of_degree(f: &MultiPoly, x: &str, y: &str, d: u32) -> Result<MultiPoly> {
    if d < 2 {
        return Err(Error::Degree(format!("discriminant needs degree >= 2, got {d}")));
    }
    let coeffs = f.binary_coefficients(x, y, d)?;
    if f.is_zero() {
        return Ok(MultiPoly::zero(f.vars().clone()));
    }
    let generic = generic_disc(d);
    let names: Vec<String> = (0..=d).map(|i| format!("a{i}")).collect();
    let assignment: HashMap<&str, MultiPoly> =
        names.iter().map(|n| n.as_str()).zip(coeffs).collect();
    Ok(generic.substitute(&assignment))
}

/// Discriminant of a binary form in `(x, y)`, normalised as
/// `(-1)^(d(d-1)/2) * Res(df/dx, df/dy) / d^(d-2)`, so `b^2 - 4ac` for
/// quadratics.
pub fn binary_form_disc(f: &MultiPoly, x: &str, y: &str) -> Result<MultiPoly> {
    match f.homogeneous_degree_in(&[x, y])? {
        None => Err(Error::Degree("the zero polynomial has no degree".into())),
        Some(d) => binary_form_disc_of_degree(f, x, y, d),
    }
}

/// Determinant of the matrix of second partials of a ternary quadratic.
pub fn ternary_quadratic_disc<S: AsRef<str>>(q: &MultiPoly, vars: &[S]) -> Result<MultiPoly> {
    if vars.len() != 3 {
        return Err(Error::InvalidArgument("a ternary form needs three variables".into()));
    }
    match q.homogeneous_degree_in(vars)? {
        None | Some(2) => {}
        Some(d) => {
            return Err(Error::Degree(format!("expected a quadratic, got degree {d}")));
        }
    }
    let rows = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    q.partial_derive(vars[i].as_ref(), 1)
                        .partial_derive(vars[j].as_ref(), 1)
                })
                .collect()
        })
        .collect();
    det_matrix(rows)
}

fn schlafli_222(t: &Tensor) -> Result<MultiPoly> {
    let u = fresh_names(t.vars(), 2);
    let pencil = t.contract_axis(2, &u)?;
    let q = det_square(&pencil)?;
    Ok(binary_form_disc_of_degree(&q, &u[0], &u[1], 2)?.prune_vars(&u))
}

fn schlafli_223(t: &Tensor) -> Result<MultiPoly> {
    let u = fresh_names(t.vars(), 3);
    let pencil = t.contract_axis(2, &u)?;
    let q = det_square(&pencil)?;
    Ok(ternary_quadratic_disc(&q, &u)?.prune_vars(&u))
}

fn schlafli_2222(t: &Tensor) -> Result<MultiPoly> {
    let u = fresh_names(t.vars(), 2);
    let pencil = t.contract_axis(3, &u)?;
    let q = schlafli_222(&pencil)?;
    Ok(binary_form_disc_of_degree(&q, &u[0], &u[1], 4)?.prune_vars(&u))
}

/// The hyperdeterminant (discriminant of the multilinear form) of `t`.
///
/// Length-1 axes are dropped first. Square matrices give the determinant;
/// `2x2x2`, `2x2x3` (the length-3 axis in any position) and `2x2x2x2` use
/// Schläfli's method. Formats without a hyperdeterminant and other formats
/// are rejected.
pub fn hyperdet(t: &Tensor) -> Result<MultiPoly> {
    let class = classify(t.shape());
    match class.kind {
        FormatKind::Nonexistent => return Err(Error::NonexistentFormat(t.shape().to_string())),
        FormatKind::AdmissibleUnimplemented => {
            return Err(Error::UnsupportedFormat(t.shape().to_string()))
        }
        _ => {}
    }
    let s = t.squeeze();
    match s.shape().dims() {
        [1] => Ok(s.entries()[0].clone()),
        [_, _] => det_square(&s),
        [2, 2, 2] => schlafli_222(&s),
        [2, 2, 2, 2] => schlafli_2222(&s),
        dims => {
            let axis = dims.iter().position(|&n| n == 3).unwrap();
            let mut perm: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
            perm.push(axis);
            schlafli_223(&s.permute_axes(&perm)?)
        }
    }
}

/// Cayley's closed-form expansion of the `2x2x2` hyperdeterminant.
pub fn cayley_222(t: &Tensor) -> Result<MultiPoly> {
    if t.shape().dims() != [2, 2, 2] {
        return Err(Error::Dimension(format!("expected 2x2x2, got {}", t.shape())));
    }
    let a = |i: usize, j: usize, k: usize| t.get(&[i, j, k]);
    let prod = |xs: [&MultiPoly; 4]| &(&(xs[0] * xs[1]) * xs[2]) * xs[3];
    let sq = |p: &MultiPoly, q: &MultiPoly| {
        let pq = p * q;
        &pq * &pq
    };
    let mut acc = sq(a(0, 0, 0), a(1, 1, 1));
    acc = &acc + &sq(a(0, 0, 1), a(1, 1, 0));
    acc = &acc + &sq(a(0, 1, 0), a(1, 0, 1));
    acc = &acc + &sq(a(1, 0, 0), a(0, 1, 1));
    let twos = [
        [a(0, 0, 0), a(0, 0, 1), a(1, 1, 0), a(1, 1, 1)],
        [a(0, 0, 0), a(0, 1, 0), a(1, 0, 1), a(1, 1, 1)],
        [a(0, 0, 0), a(1, 0, 0), a(0, 1, 1), a(1, 1, 1)],
        [a(0, 0, 1), a(0, 1, 0), a(1, 0, 1), a(1, 1, 0)],
        [a(0, 0, 1), a(1, 0, 0), a(0, 1, 1), a(1, 1, 0)],
        [a(0, 1, 0), a(1, 0, 0), a(0, 1, 1), a(1, 0, 1)],
    ];
    for xs in twos {
        acc = &acc - &prod(xs).scale(&Scalar::int(2));
    }
    let fours = [
        [a(0, 0, 0), a(0, 1, 1), a(1, 0, 1), a(1, 1, 0)],
        [a(0, 0, 1), a(0, 1, 0), a(1, 0, 0), a(1, 1, 1)],
    ];
    for xs in fours {
        acc = &acc + &prod(xs).scale(&Scalar::int(4));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    const XY: &[&str] = &["x", "y"];

    fn sym_tensor(dims: &[usize], prefix: &str) -> Tensor {
        let shape = Shape::new(dims.to_vec()).unwrap();
        let names: Vec<String> = shape
            .indices()
            .map(|i| format!("{prefix}{}", i.iter().map(|d| d.to_string()).collect::<String>()))
            .collect();
        let vars = vars_of(&names);
        let entries = names.iter().map(|n| MultiPoly::var(vars.clone(), n).unwrap()).collect();
        Tensor::new(shape, vars, entries).unwrap()
    }

    #[test]
    fn square_determinants() {
        let id = Tensor::from_ints(&[2, 2], &[1, 0, 0, 1]).unwrap();
        assert_eq!(det_square(&id).unwrap().to_string(), "1");
        let vars = vars_of(XY);
        let x = MultiPoly::var(vars.clone(), "x").unwrap();
        let y = MultiPoly::var(vars.clone(), "y").unwrap();
        let m = Tensor::new(Shape::new(vec![2, 2]).unwrap(), vars, vec![x.clone(), y.clone(), y, x]).unwrap();
        assert_eq!(det_square(&m).unwrap().to_string(), "x^2 - y^2");
        let rep = Tensor::from_ints(&[3, 3], &[1, 2, 3, 1, 2, 3, 4, 5, 6]).unwrap();
        assert!(det_square(&rep).unwrap().is_zero());
        assert!(det_square(&Tensor::from_ints(&[2, 3], &[0; 6]).unwrap()).is_err());
    }

    #[test]
    fn bareiss_matches_laplace() {
        // Laplace expansion oracle on a 5x5 integer matrix
        fn laplace(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * laplace(&minor)
                })
                .sum()
        }
        let m: Vec<Vec<i64>> = vec![
            vec![0, 2, -1, 3, 4],
            vec![1, 0, 5, -2, 1],
            vec![3, -3, 0, 1, 2],
            vec![2, 1, 1, 0, -1],
            vec![-1, 4, 2, 2, 0],
        ];
        let rows = m
            .iter()
            .map(|r| r.iter().map(|&v| MultiPoly::int(vars_of::<&str>(&[]), v)).collect())
            .collect();
        let d = det_matrix(rows).unwrap();
        assert_eq!(d.constant_value(), Some(Scalar::int(laplace(&m))));
    }

    #[test]
    fn discriminants() {
        let f = parse_poly("x^2 - y^2", XY).unwrap();
        assert_eq!(binary_form_disc(&f, "x", "y").unwrap().to_string(), "4");
        let f = parse_poly("x^3 + y^3", XY).unwrap();
        assert_eq!(binary_form_disc(&f, "x", "y").unwrap().to_string(), "-27");
        let f = parse_poly("(x - y)^2*(x + y)", XY).unwrap();
        assert!(binary_form_disc(&f, "x", "y").unwrap().is_zero());
        assert!(binary_form_disc(&parse_poly("x + y^2", XY).unwrap(), "x", "y").is_err());
        assert!(binary_form_disc(&parse_poly("x + y", XY).unwrap(), "x", "y").is_err());
    }

    #[test]
    fn quadratic_disc_is_b2_minus_4ac() {
        let vars = ["a", "b", "c", "x", "y"];
        let f = parse_poly("a*x^2 + b*x*y + c*y^2", &vars).unwrap();
        let d = binary_form_disc(&f, "x", "y").unwrap();
        assert_eq!(d, parse_poly("b^2 - 4*a*c", &vars).unwrap());
    }

    #[test]
    fn cubic_disc_matches_resultant_oracle() {
        // oracle: Sylvester resultant of the partials, divided by -3
        let vars = ["p", "q", "r", "s", "x", "y"];
        let f = parse_poly("p*x^3 + q*x^2*y + r*x*y^2 + s*y^3", &vars).unwrap();
        let res = sylvester_resultant(&f.partial_derive("x", 1), &f.partial_derive("y", 1), "x", "y").unwrap();
        let d = binary_form_disc(&f, "x", "y").unwrap();
        assert_eq!(d.scale(&Scalar::int(-3)), res);
        // classical form q^2 r^2 - 4 p r^3 - 4 q^3 s - 27 p^2 s^2 + 18 p q r s
        let classical =
            parse_poly("q^2*r^2 - 4*p*r^3 - 4*q^3*s - 27*p^2*s^2 + 18*p*q*r*s", &vars).unwrap();
        assert_eq!(d, classical);
    }

    #[test]
    fn ternary_examples() {
        let u = ["u0", "u1", "u2"];
        let q = parse_poly("u0^2 + u1^2 + u2^2", &u).unwrap();
        assert_eq!(ternary_quadratic_disc(&q, &u).unwrap().to_string(), "8");
        assert!(ternary_quadratic_disc(&parse_poly("u0*u1", &u).unwrap(), &u).unwrap().is_zero());
        let q = parse_poly("u0^2 + u1*u2", &u).unwrap();
        assert_eq!(ternary_quadratic_disc(&q, &u).unwrap().to_string(), "-2");
        assert!(ternary_quadratic_disc(&parse_poly("u0^3", &u).unwrap(), &u).is_err());
    }

    #[test]
    fn hyperdet_examples() {
        let mut v = vec![0; 8];
        v[0] = 1;
        v[7] = 1;
        let t = Tensor::from_ints(&[2, 2, 2], &v).unwrap();
        assert_eq!(hyperdet(&t).unwrap().to_string(), "1");
        let ones = Tensor::from_ints(&[2, 2, 2], &[1; 8]).unwrap();
        assert!(hyperdet(&ones).unwrap().is_zero());
        let tall = Tensor::from_ints(&[4, 2], &[0; 8]).unwrap();
        assert_eq!(hyperdet(&tall), Err(Error::NonexistentFormat("4x2".into())));
        let cube = Tensor::from_ints(&[3, 3, 3], &[0; 27]).unwrap();
        assert_eq!(hyperdet(&cube), Err(Error::UnsupportedFormat("3x3x3".into())));
        let flat = Tensor::from_ints(&[1, 2, 2], &[1, 2, 3, 4]).unwrap();
        assert_eq!(hyperdet(&flat).unwrap().to_string(), "-2");
    }

    #[test]
    fn format_classes() {
        let k = |d: &[usize]| classify(&Shape::new(d.to_vec()).unwrap()).kind;
        assert_eq!(k(&[3, 3]), FormatKind::SquareMatrix);
        assert_eq!(k(&[2, 3]), FormatKind::Nonexistent);
        assert_eq!(k(&[3, 2, 2]), FormatKind::SupportedHyperdet);
        assert_eq!(k(&[2, 2, 4]), FormatKind::Nonexistent);
        assert_eq!(k(&[2, 3, 3]), FormatKind::AdmissibleUnimplemented);
        assert_eq!(k(&[2, 2, 2, 2]), FormatKind::SupportedHyperdet);
        assert_eq!(k(&[2, 2, 2, 2, 2]), FormatKind::AdmissibleUnimplemented);
    }

    #[test]
    fn symbolic_222_equals_cayley_and_has_degree_4() {
        let t = sym_tensor(&[2, 2, 2], "a");
        let h = hyperdet(&t).unwrap();
        assert_eq!(h, cayley_222(&t).unwrap());
        assert!(h.terms().all(|(m, _)| m.degree() == 4));
        assert_eq!(h.num_terms(), 12);
    }

    #[test]
    fn symbolic_223_degree_6_and_axis_position() {
        let t = sym_tensor(&[2, 2, 3], "a");
        let h = hyperdet(&t).unwrap();
        assert!(!h.is_zero());
        assert!(h.terms().all(|(m, _)| m.degree() == 6));
        for perm in [[2, 0, 1], [0, 2, 1], [1, 0, 2]] {
            assert_eq!(hyperdet(&t.permute_axes(&perm).unwrap()).unwrap(), h);
        }
    }
}
