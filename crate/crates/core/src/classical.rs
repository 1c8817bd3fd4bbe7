//! Classical invariants of binary forms: Sylvester resultants, the Hankel
//! (catalecticant) determinant and apolar invariant of a quartic, and the
//! Wronskian of three forms.

use crate::error::{Error, Result};
use crate::hyperdet::det_matrix;
use crate::poly::MultiPoly;
use crate::scalar::Scalar;

fn form_degree(f: &MultiPoly, x: &str, y: &str, what: &str) -> Result<u32> {
    f.homogeneous_degree_in(&[x, y])?
        .ok_or_else(|| Error::Degree(format!("{what} must be a nonzero form")))
}

/// Determinant of the `(m+n) x (m+n)` Sylvester matrix of two binary forms
/// of degrees `m, n >= 1` in `(x, y)`.
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, x: &str, y: &str) -> Result<MultiPoly> {
    let m = form_degree(f, x, y, "first argument")?;
    let n = form_degree(g, x, y, "second argument")?;
    if m == 0 || n == 0 {
        return Err(Error::Degree("resultant needs forms of positive degree".into()));
    }
    let (fa, ga) = MultiPoly::align(f, g);
    let a = fa.binary_coefficients(x, y, m)?;
    let b = ga.binary_coefficients(x, y, n)?;
    let size = (m + n) as usize;
    let zero = MultiPoly::zero(fa.vars().clone());
    let mut rows = vec![vec![zero; size]; size];
    for r in 0..n as usize {
        for (i, c) in a.iter().enumerate() {
            rows[r][r + i] = c.clone();
        }
    }
    for r in 0..m as usize {
        for (j, c) in b.iter().enumerate() {
            rows[n as usize + r][r + j] = c.clone();
        }
    }
    det_matrix(rows)
}

/// `[c40, c31, c22, c13, c04]` of a binary quartic.
fn quartic_coefficients(f: &MultiPoly, x: &str, y: &str) -> Result<Vec<MultiPoly>> {
    f.binary_coefficients(x, y, 4)
}

/// One eighth of the determinant of
/// `[[24 c40, 6 c31, 4 c22], [6 c31, 4 c22, 6 c13], [4 c22, 6 c13, 24 c04]]`.
pub fn hankel_quartic(f: &MultiPoly, x: &str, y: &str) -> Result<MultiPoly> {
    let c = quartic_coefficients(f, x, y)?;
    let s = |k: i64, p: &MultiPoly| p.scale(&Scalar::int(k));
    let rows = vec![
        vec![s(24, &c[0]), s(6, &c[1]), s(4, &c[2])],
        vec![s(6, &c[1]), s(4, &c[2]), s(6, &c[3])],
        vec![s(4, &c[2]), s(6, &c[3]), s(24, &c[4])],
    ];
    Ok(det_matrix(rows)?.scale(&Scalar::ratio(1, 8)))
}

/// The apolar invariant `c22^2 - 3 c31 c13 + 12 c40 c04`, twelve times the
/// classical `ae - 4bd + 3c^2` of `a x^4 + 4b x^3 y + 6c x^2 y^2 + 4d x y^3 + e y^4`.
/// The sign of the middle term is the one that makes it a `GL_2` invariant.
pub fn apolar_quartic(f: &MultiPoly, x: &str, y: &str) -> Result<MultiPoly> {
    let c = quartic_coefficients(f, x, y)?;
    let t1 = &c[2] * &c[2];
    let t2 = (&c[1] * &c[3]).scale(&Scalar::int(3));
    let t3 = (&c[0] * &c[4]).scale(&Scalar::int(12));
    Ok(&(&t1 - &t2) + &t3)
}

/// Wronskian of three binary forms of equal degree in the affine coordinate
/// `x` (after setting `y = 1`): the determinant with rows `(f'', f', f)`.
pub fn wronskian3(forms: [&MultiPoly; 3], x: &str, y: &str) -> Result<MultiPoly> {
    let mut degree = None;
    for f in forms {
        if let Some(d) = f.homogeneous_degree_in(&[x, y])? {
            match degree {
                None => degree = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Degree(format!(
                        "Wronskian needs forms of equal degree, got {e} and {d}"
                    )))
                }
                _ => {}
            }
        }
    }
    let mut rows = Vec::with_capacity(3);
    for f in forms {
        let mut names: Vec<String> = f.vars().to_vec();
        for v in [x, y] {
            if !names.iter().any(|n| n == v) {
                names.push(v.to_string());
            }
        }
        let affine = f.with_vars(&names.into())?.dehomogenize(x, y)?;
        rows.push(vec![
            affine.partial_derive(x, 2),
            affine.partial_derive(x, 1),
            affine,
        ]);
    }
    det_matrix(rows)
}
