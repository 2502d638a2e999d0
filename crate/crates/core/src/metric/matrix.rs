use std::fmt::Write;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{render, Rational};

/// Symmetric matrix of exact non-negative distances with a zero diagonal,
/// indexed by the vertex order it was built with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    vertices: Vec<String>,
    entries: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    vertices: Vec<String>,
    matrix: Vec<Vec<String>>,
}

impl DistanceMatrix {
    /// Builds and validates a matrix from rows.
    pub fn new(vertices: Vec<String>, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = vertices.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("no points".into()));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidMatrix(format!("expected a {n}x{n} matrix")));
        }
        let dm = Self {
            vertices,
            entries: rows.into_iter().flatten().collect(),
        };
        dm.validate()?;
        Ok(dm)
    }

    pub(crate) fn filled(vertices: Vec<String>, value: Rational) -> Self {
        let n = vertices.len();
        let mut entries = vec![value; n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::zero();
        }
        Self { vertices, entries }
    }

    pub(crate) fn set_pair(&mut self, i: usize, j: usize, value: Rational) {
        let n = self.len();
        self.entries[j * n + i] = value.clone();
        self.entries[i * n + j] = value;
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        let n = self.len();
        &self.entries[i * n..(i + 1) * n]
    }

    /// Values above the diagonal, row by row.
    pub fn off_diagonal(&self) -> impl Iterator<Item = &Rational> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| self.get(i, j)))
    }

    /// Zero diagonal, symmetry, non-negativity and the strong triangle
    /// inequality over all triples.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let name = |i: usize| &self.vertices[i];
        for i in 0..n {
            if !self.get(i, i).is_zero() {
                return Err(Error::InvalidMatrix(format!(
                    "d({0}, {0}) is not zero",
                    name(i)
                )));
            }
            for j in 0..n {
                let d = self.get(i, j);
                if d.is_negative() {
                    return Err(Error::InvalidMatrix(format!(
                        "d({}, {}) is negative",
                        name(i),
                        name(j)
                    )));
                }
                if d != self.get(j, i) {
                    return Err(Error::InvalidMatrix(format!(
                        "d({}, {}) is not symmetric",
                        name(i),
                        name(j)
                    )));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    if self.get(i, j) > self.get(i, k).max(self.get(k, j)) {
                        return Err(Error::InvalidMatrix(format!(
                            "strong triangle inequality fails for {}, {} via {}",
                            name(i),
                            name(j),
                            name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Submatrix on the given point indices, in that order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let vertices = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let entries = keep
            .iter()
            .flat_map(|&i| keep.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Self { vertices, entries }
    }

    /// Same space with point names replaced; distances untouched.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.len() {
            return Err(Error::InvalidMatrix("name count does not match".into()));
        }
        Ok(Self {
            vertices: names,
            entries: self.entries.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        let doc = MatrixDoc {
            vertices: self.vertices.clone(),
            matrix: (0..self.len())
                .map(|i| self.row(i).iter().map(render).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MatrixDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidMatrix(e.to_string()))?;
        let rows = doc
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| {
                        crate::rational::parse_non_negative(s)
                            .map_err(|k| Error::InvalidMatrix(k.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(doc.vertices, rows)
    }

    /// Header row of vertex ids, then one row of entries per vertex.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(&self.vertices)
            .expect("in-memory write");
        for i in 0..self.len() {
            writer
                .write_record(self.row(i).iter().map(render))
                .expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush"))
            .expect("csv output is utf-8")
    }

    /// Aligned plain-text table.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.len())
            .map(|i| self.row(i).iter().map(render).collect())
            .collect();
        let width = self
            .vertices
            .iter()
            .map(String::len)
            .chain(cells.iter().flatten().map(String::len))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        write!(out, "{:width$}", "").unwrap();
        for v in &self.vertices {
            write!(out, " {v:>width$}").unwrap();
        }
        out.push('\n');
        for (v, row) in self.vertices.iter().zip(&cells) {
            write!(out, "{v:width$}").unwrap();
            for c in row {
                write!(out, " {c:>width$}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}
