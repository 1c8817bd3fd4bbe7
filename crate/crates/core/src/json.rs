//! JSON encoding of tensors:
//! `{"shape":[2,2,2],"vars":["x","y"],"entries":["...", ...]}`, entries in
//! row-major order as canonical polynomial strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::parse::parse_poly;
use crate::poly::vars_of;
use crate::tensor::{Shape, Tensor};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorJson {
    shape: Vec<usize>,
    vars: Vec<String>,
    entries: Vec<String>,
}

pub fn tensor_to_json(t: &Tensor) -> String {
    let doc = TensorJson {
        shape: t.shape().dims().to_vec(),
        vars: t.vars().to_vec(),
        entries: t.entries().iter().map(ToString::to_string).collect(),
    };
    serde_json::to_string(&doc).expect("tensor serialises")
}

pub fn tensor_from_json(text: &str) -> Result<Tensor> {
    let doc: TensorJson =
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("tensor JSON: {e}")))?;
    let shape = Shape::new(doc.shape)?;
    if doc.entries.len() != shape.size() {
        return Err(Error::Dimension(format!(
            "shape {shape} needs {} entries, got {}",
            shape.size(),
            doc.entries.len()
        )));
    }
    let entries = doc
        .entries
        .iter()
        .map(|e| parse_poly(e, &doc.vars))
        .collect::<Result<_>>()?;
    Tensor::new(shape, vars_of(&doc.vars), entries)
}
