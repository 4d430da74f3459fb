//! Interchange documents describing an algebra together with one element.
//!
//! ```json
//! {"kind":"function_algebra","points":["a","b"],"values":[[1,0],[0,-2]]}
//! {"kind":"normal_matrix","n":2,"entries":[[0,0],[1,0],[1,0],[0,0]]}
//! ```
//!
//! Complex numbers are `[re, im]` pairs; matrix entries are row-major. A
//! `normal_matrix` document denotes the generator inside the algebra it
//! generates.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, ModelKind};
use crate::error::{Error, Result};
use crate::space::FiniteSpace;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Document {
    FunctionAlgebra { points: Vec<String>, values: Vec<[f64; 2]> },
    NormalMatrix { n: usize, entries: Vec<[f64; 2]> },
}

fn to_complex(pair: &[f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn to_pair(z: &Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialise")
    }

    /// The described element, inside a freshly built algebra.
    pub fn into_element(self) -> Result<Element> {
        match self {
            Document::FunctionAlgebra { points, values } => {
                let space = FiniteSpace::new(points)?;
                let algebra = Algebra::functions(space);
                algebra.element(values.iter().map(to_complex).collect())
            }
            Document::NormalMatrix { n, entries } => {
                if n == 0 || entries.len() != n * n {
                    return Err(Error::InvalidDocument(format!(
                        "normal_matrix with n={n} needs {} entries, found {}",
                        n * n,
                        entries.len()
                    )));
                }
                let m = DMatrix::from_row_iterator(n, n, entries.iter().map(to_complex));
                let algebra = Algebra::normal(m)?;
                Ok(algebra.generator().expect("matrix algebra"))
            }
        }
    }

    /// Describes an element; matrix-model elements are written as their dense matrix.
    pub fn from_element(a: &Element) -> Self {
        match a.algebra().kind() {
            ModelKind::Function => Document::FunctionAlgebra {
                points: a.algebra().character_labels().labels().to_vec(),
                values: a.coords().iter().map(to_pair).collect(),
            },
            ModelKind::NormalMatrix => {
                let m = a.materialize().expect("matrix algebra");
                let n = m.nrows();
                let entries = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .map(|(i, j)| to_pair(&m[(i, j)]))
                    .collect();
                Document::NormalMatrix { n, entries }
            }
        }
    }
}
