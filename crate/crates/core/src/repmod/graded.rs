//! Windows of `Z`-graded `k[x,y]/(xy)`-modules as representations of the
//! quiver with vertices `a … b`, arrows `x_i, y_i : i-1 → i` and relations
//! `x_{i+1} y_i`, `y_{i+1} x_i`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::io::{parse_matrix, FieldLiteral};
use super::Representation;
use crate::algebra::StringAlgebra;
use crate::error::{Error, Result};
use crate::exactla::Matrix;

/// Graded data on degrees `window[0] ..= window[1]`: `x[j]`, `y[j]` map
/// degree `window[0] + j` to the next degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedData {
    pub field: FieldLiteral,
    pub window: [i64; 2],
    pub dims: Vec<usize>,
    #[serde(default)]
    pub x: Vec<Vec<Vec<Value>>>,
    #[serde(default)]
    pub y: Vec<Vec<Vec<Value>>>,
}

#[derive(Clone, Debug)]
pub struct GradedWindow {
    pub rep: Representation,
    /// Degree of each vertex.
    pub degrees: Vec<i64>,
    /// One message per nonzero map crossing the window boundary.
    pub warnings: Vec<String>,
}

/// The window quiver on degrees `a ..= b`.
pub fn graded_algebra(a: i64, b: i64) -> Result<StringAlgebra> {
    if a > b {
        return Err(Error::Malformed(format!("empty window [{a}, {b}]")));
    }
    let names: Vec<String> = (a..=b).map(|i| i.to_string()).collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut arrows = vec![];
    for i in a + 1..=b {
        for l in ["x", "y"] {
            arrows.push((format!("{l}{i}"), i.to_string(), (i - 1).to_string()));
        }
    }
    let ar: Vec<(&str, &str, &str)> = arrows.iter().map(|(n, h, t)| (n.as_str(), h.as_str(), t.as_str())).collect();
    let mut rels = vec![];
    for i in a + 1..b {
        rels.push([format!("x{}", i + 1), format!("y{i}")]);
        rels.push([format!("y{}", i + 1), format!("x{i}")]);
    }
    let rr: Vec<Vec<&str>> = rels.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
    let rs: Vec<&[&str]> = rr.iter().map(Vec::as_slice).collect();
    StringAlgebra::new(&vs, &ar, &rs)
}

/// Restricts graded data to degrees `lo ..= hi` (defaulting to the data's
/// own range). Maps leaving or entering the window are dropped, with a
/// warning for each nonzero one.
pub fn graded_ingest(data: &GradedData, window: Option<(i64, i64)>) -> Result<GradedWindow> {
    let field = data.field.to_spec()?;
    let [a0, b0] = data.window;
    if a0 > b0 || data.dims.len() as i64 != b0 - a0 + 1 {
        return Err(Error::Malformed("dims must list one dimension per degree of the window".into()));
    }
    let steps = (b0 - a0) as usize;
    let get = |maps: &Vec<Vec<Vec<Value>>>, j: usize| -> Result<Matrix> {
        let (r, c) = (data.dims[j + 1], data.dims[j]);
        match maps.get(j) {
            Some(lit) => parse_matrix(field, r, c, lit),
            None => Ok(Matrix::zeros(field, r, c)),
        }
    };
    if data.x.len() > steps || data.y.len() > steps {
        return Err(Error::Malformed(format!("at most {steps} maps per letter")));
    }
    let xs: Vec<Matrix> = (0..steps).map(|j| get(&data.x, j)).collect::<Result<_>>()?;
    let ys: Vec<Matrix> = (0..steps).map(|j| get(&data.y, j)).collect::<Result<_>>()?;
    for j in 0..steps.saturating_sub(1) {
        if !xs[j + 1].mul(&ys[j]).is_zero() || !ys[j + 1].mul(&xs[j]).is_zero() {
            return Err(Error::Domain(format!("xy or yx is nonzero starting in degree {}", a0 + j as i64)));
        }
    }
    let (lo, hi) = window.unwrap_or((a0, b0));
    if lo < a0 || hi > b0 || lo > hi {
        return Err(Error::Domain(format!("window [{lo}, {hi}] is not inside [{a0}, {b0}]")));
    }
    let mut warnings = vec![];
    for j in 0..steps {
        let (from, to) = (a0 + j as i64, a0 + j as i64 + 1);
        let inside = from >= lo && to <= hi;
        let crosses = (from < lo && to == lo) || (from == hi && to > hi);
        if !inside && crosses {
            for (l, m) in [("x", &xs[j]), ("y", &ys[j])] {
                if !m.is_zero() {
                    warnings.push(format!("dropped nonzero {l} map from degree {from} to {to} at the window boundary"));
                }
            }
        }
    }
    let alg = graded_algebra(lo, hi)?;
    let dims: Vec<usize> = (lo..=hi).map(|i| data.dims[(i - a0) as usize]).collect();
    let action = alg
        .arrows()
        .iter()
        .map(|arrow| {
            let deg: i64 = arrow.name[1..].parse().unwrap();
            let j = (deg - 1 - a0) as usize;
            if arrow.name.starts_with('x') {
                xs[j].clone()
            } else {
                ys[j].clone()
            }
        })
        .collect();
    let rep = Representation::new(alg, field, dims, action)?;
    Ok(GradedWindow {
        rep,
        degrees: (lo..=hi).collect(),
        warnings,
    })
}
