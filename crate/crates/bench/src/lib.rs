//! Inputs shared by the benchmarks.

use polarinv::{parse_poly, MultiPoly, Tensor};

pub const QUARTIC_NAMES: [&str; 7] = ["c40", "c31", "c22", "c13", "c04", "x", "y"];

pub fn generic_quartic() -> MultiPoly {
    parse_poly("c40*x^4 + c31*x^3*y + c22*x^2*y^2 + c13*x*y^3 + c04*y^4", &QUARTIC_NAMES).unwrap()
}

pub fn dense_trivariate(degree: u32) -> MultiPoly {
    parse_poly(&format!("(3*x - 2*y + 5*z - 1)^{degree}"), &["x", "y", "z"]).unwrap()
}

/// `2x2x2` tensor with independent indeterminate entries `a0..a7`.
pub fn symbolic_222() -> Tensor {
    let names: Vec<String> = (0..8).map(|i| format!("a{i}")).collect();
    let vars = polarinv::poly::vars_of(&names);
    let entries = names.iter().map(|n| MultiPoly::var(vars.clone(), n).unwrap()).collect();
    Tensor::new(polarinv::Shape::new(vec![2, 2, 2]).unwrap(), vars, entries).unwrap()
}

pub fn sample_quartic() -> MultiPoly {
    parse_poly("3*x^4 - 7*x^3*y + 2*x^2*y^2 + 5*x*y^3 - 4*y^4", &["x", "y"]).unwrap()
}
