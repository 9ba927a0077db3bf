//! Cellular chain models of based CW complexes and CW pairs `(X, A, x)`.

use std::collections::BTreeMap;

use crate::chain::{CellFactor, ChainComplex};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// One cell with its cellular boundary, given as `(cell index, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
    pub boundary: Vec<(usize, i64)>,
}

impl Cell {
    pub fn new(name: impl Into<String>, dim: usize, boundary: Vec<(usize, i64)>) -> Self {
        Cell {
            name: name.into(),
            dim,
            boundary,
        }
    }
}

fn check_cells(cells: &[Cell]) -> Result<()> {
    for (k, c) in cells.iter().enumerate() {
        for &(t, _) in &c.boundary {
            let target = cells
                .get(t)
                .ok_or_else(|| Error::InvalidPair(format!("cell {} has boundary outside the model", c.name)))?;
            if target.dim + 1 != c.dim {
                return Err(Error::InvalidPair(format!(
                    "boundary of {} (cell {k}) meets {} of the wrong dimension",
                    c.name, target.name
                )));
            }
        }
        // ∂∂ = 0
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(t, a) in &c.boundary {
            for &(s, b) in &cells[t].boundary {
                *acc.entry(s).or_insert(0) += a * b;
            }
        }
        if acc.values().any(|&v| v != 0) {
            return Err(Error::InvalidPair(format!(
                "boundary of {} does not square to zero",
                c.name
            )));
        }
    }
    Ok(())
}

fn chain_complex_of(cells: &[Cell]) -> ChainComplex {
    let top = cells.iter().map(|c| c.dim).max().unwrap_or(0);
    let mut pos = vec![0usize; cells.len()];
    let mut ranks = vec![0usize; top + 1];
    let mut labels = vec![Vec::new(); top + 1];
    for (k, c) in cells.iter().enumerate() {
        pos[k] = ranks[c.dim];
        ranks[c.dim] += 1;
        labels[c.dim].push(c.name.clone());
    }
    let mut cols: Vec<Vec<Vec<(usize, i64)>>> = vec![Vec::new(); top + 1];
    for c in cells {
        cols[c.dim].push(c.boundary.iter().map(|&(t, v)| (pos[t], v)).collect());
    }
    let boundaries = cols
        .into_iter()
        .enumerate()
        .map(|(d, cs)| IntegerMatrix::from_columns(if d == 0 { 0 } else { ranks[d - 1] }, cs))
        .collect::<Result<Vec<_>>>()
        .expect("validated cells");
    ChainComplex::new(0, ranks, boundaries)
        .and_then(|c| c.with_labels(labels))
        .expect("validated cells")
}

/// A finite CW complex with a distinguished 0-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellModel {
    name: String,
    cells: Vec<Cell>,
    basepoint: usize,
}

impl CellModel {
    pub fn new(name: impl Into<String>, cells: Vec<Cell>, basepoint: usize) -> Result<Self> {
        check_cells(&cells)?;
        match cells.get(basepoint) {
            Some(c) if c.dim == 0 => {}
            _ => return Err(Error::InvalidPair("basepoint must be a 0-cell".into())),
        }
        Ok(CellModel {
            name: name.into(),
            cells,
            basepoint,
        })
    }

    /// The point.
    pub fn point() -> Self {
        Self::sphere_like("pt", None)
    }

    /// `S^n` as `e^0 ∪ e^n` (`S^0` as two points).
    pub fn sphere(n: usize) -> Self {
        Self::sphere_like(&format!("S^{n}"), Some(n))
    }

    fn sphere_like(name: &str, n: Option<usize>) -> Self {
        let mut cells = vec![Cell::new("*", 0, vec![])];
        if let Some(n) = n {
            cells.push(Cell::new(format!("e{n}"), n, vec![]));
        }
        CellModel::new(name, cells, 0).expect("sphere model")
    }

    /// `RP^2 = e^0 ∪ e^1 ∪ e^2` with `∂e^2 = 2e^1`.
    pub fn rp2() -> Self {
        CellModel::new(
            "RP^2",
            vec![
                Cell::new("*", 0, vec![]),
                Cell::new("e1", 1, vec![]),
                Cell::new("e2", 2, vec![(1, 2)]),
            ],
            0,
        )
        .expect("rp2 model")
    }

    /// Simplices of `K` as cells, based at vertex `v` (1-based).
    pub fn from_simplicial(k: &SimplicialComplex, v: usize) -> Result<Self> {
        let faces: Vec<_> = k.faces()[1..].to_vec();
        let index: std::collections::HashMap<u32, usize> =
            faces.iter().enumerate().map(|(i, f)| (f.mask(), i)).collect();
        let base = crate::complex::IndexSubset::from_mask(if (1..=k.m()).contains(&v) { 1 << (v - 1) } else { 0 });
        let Some(&basepoint) = index.get(&base.mask()).filter(|_| !base.is_empty()) else {
            return Err(Error::InvalidPair(format!("vertex {v} is not a vertex of the complex")));
        };
        let cells = faces
            .iter()
            .map(|f| {
                let boundary = if f.len() == 1 {
                    vec![]
                } else {
                    f.vertices()
                        .enumerate()
                        .map(|(i, u)| (index[&f.without(u).mask()], if i % 2 == 0 { 1 } else { -1 }))
                        .collect()
                };
                Cell::new(f.to_string(), f.len() - 1, boundary)
            })
            .collect();
        CellModel::new(format!("|K|@{v}"), cells, basepoint)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn chain_complex(&self) -> ChainComplex {
        chain_complex_of(&self.cells)
    }

    /// `C(X)/C(x)`: computes reduced homology.
    pub fn reduced_chain_complex(&self) -> ChainComplex {
        let cells: Vec<Cell> = self
            .cells
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != self.basepoint)
            .map(|(_, c)| c.clone())
            .collect();
        let remap = |t: usize| if t > self.basepoint { t - 1 } else { t };
        let cells: Vec<Cell> = cells
            .into_iter()
            .map(|mut c| {
                c.boundary = c
                    .boundary
                    .iter()
                    .filter(|&&(t, _)| t != self.basepoint)
                    .map(|&(t, v)| (remap(t), v))
                    .collect();
                c
            })
            .collect();
        if cells.is_empty() {
            return ChainComplex::zero();
        }
        chain_complex_of(&cells)
    }
}

/// Why a pair's inclusion `A -> X` is known to be null-homotopic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// `(D^(n+1), S^n)`.
    DiskSphere(usize),
    /// `(CA, A)`.
    Cone,
    /// `(X, x)`.
    Based,
    /// Hand-built; not certified.
    Custom,
}

impl PairKind {
    pub fn is_certified(&self) -> bool {
        !matches!(self, PairKind::Custom)
    }
}

/// Cells of a CW pair; `in_a` marks the cells of the subcomplex `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCell {
    pub cell: Cell,
    pub in_a: bool,
}

/// Cellular model of a based CW pair `(X, A, x)` with `x ∈ A` a 0-cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairModel {
    name: String,
    cells: Vec<PairCell>,
    basepoint: usize,
    kind: PairKind,
}

impl PairModel {
    /// Validates `∂∂ = 0`, that `A` is a subcomplex containing the basepoint,
    /// and that the basepoint is a 0-cell.
    pub fn new(name: impl Into<String>, cells: Vec<PairCell>, basepoint: usize) -> Result<Self> {
        Self::with_kind(name, cells, basepoint, PairKind::Custom)
    }

    fn with_kind(name: impl Into<String>, cells: Vec<PairCell>, basepoint: usize, kind: PairKind) -> Result<Self> {
        let plain: Vec<Cell> = cells.iter().map(|c| c.cell.clone()).collect();
        check_cells(&plain)?;
        match cells.get(basepoint) {
            Some(c) if c.cell.dim == 0 && c.in_a => {}
            _ => return Err(Error::InvalidPair("basepoint must be a 0-cell of A".into())),
        }
        for c in cells.iter().filter(|c| c.in_a) {
            if c.cell.boundary.iter().any(|&(t, _)| !cells[t].in_a) {
                return Err(Error::InvalidPair(format!("A is not a subcomplex at {}", c.cell.name)));
            }
        }
        Ok(PairModel {
            name: name.into(),
            cells,
            basepoint,
            kind,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &PairKind {
        &self.kind
    }

    pub fn cells(&self) -> &[PairCell] {
        &self.cells
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    /// Cell indices of `A`.
    pub fn a_cells(&self) -> Vec<u32> {
        (0..self.cells.len() as u32)
            .filter(|&k| self.cells[k as usize].in_a)
            .collect()
    }

    /// Cell indices of `X ∖ A`.
    pub fn x_only_cells(&self) -> Vec<u32> {
        (0..self.cells.len() as u32)
            .filter(|&k| !self.cells[k as usize].in_a)
            .collect()
    }

    pub(crate) fn factor(&self) -> CellFactor {
        CellFactor {
            dims: self.cells.iter().map(|c| c.cell.dim as isize).collect(),
            boundary: self.cells.iter().map(|c| c.cell.boundary.clone()).collect(),
            names: Some(self.cells.iter().map(|c| c.cell.name.clone()).collect()),
        }
    }

    /// The whole space `X` as a based cell model.
    pub fn x_model(&self) -> CellModel {
        CellModel {
            name: format!("X({})", self.name),
            cells: self.cells.iter().map(|c| c.cell.clone()).collect(),
            basepoint: self.basepoint,
        }
    }

    /// The subspace `A` as a based cell model.
    pub fn a_model(&self) -> CellModel {
        let keep: Vec<usize> = (0..self.cells.len()).filter(|&k| self.cells[k].in_a).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        CellModel {
            name: format!("A({})", self.name),
            cells: keep
                .iter()
                .map(|&k| {
                    let c = &self.cells[k].cell;
                    Cell::new(
                        c.name.clone(),
                        c.dim,
                        c.boundary.iter().map(|&(t, v)| (pos[&t], v)).collect(),
                    )
                })
                .collect(),
            basepoint: pos[&self.basepoint],
        }
    }

    /// `(X, x)` for a based cell model.
    pub fn based(x: &CellModel) -> Self {
        let cells = x
            .cells
            .iter()
            .enumerate()
            .map(|(k, c)| PairCell {
                cell: c.clone(),
                in_a: k == x.basepoint,
            })
            .collect();
        Self::with_kind(format!("({},*)", x.name), cells, x.basepoint, PairKind::Based).expect("based pair")
    }

    /// `(CA, A)`: the cells of `A`, an apex `p`, and cone cells `c(σ)` with
    /// `∂c(σ) = σ - c(∂σ)` and `∂c(u) = u - p` on 0-cells.
    pub fn cone(a: &CellModel) -> Self {
        let n = a.cells.len();
        let mut cells: Vec<PairCell> = a
            .cells
            .iter()
            .map(|c| PairCell {
                cell: c.clone(),
                in_a: true,
            })
            .collect();
        let apex = n;
        cells.push(PairCell {
            cell: Cell::new("p", 0, vec![]),
            in_a: false,
        });
        let cone_of = |k: usize| n + 1 + k;
        for (k, c) in a.cells.iter().enumerate() {
            let boundary = if c.dim == 0 {
                vec![(k, 1), (apex, -1)]
            } else {
                let mut b = vec![(k, 1)];
                b.extend(c.boundary.iter().map(|&(t, v)| (cone_of(t), -v)));
                b
            };
            cells.push(PairCell {
                cell: Cell::new(format!("c({})", c.name), c.dim + 1, boundary),
                in_a: false,
            });
        }
        Self::with_kind(format!("(C{},{})", a.name, a.name), cells, a.basepoint, PairKind::Cone).expect("cone pair")
    }
}

/// `(D^(n+1), S^n)`: for `n ≥ 1` cells `v, a^n, e^(n+1)` with `∂e = a`; for `n = 0`
/// cells `v, w, e^1` with `∂e = w - v`. Basepoint `v`.
pub fn pair_disk_sphere(n: usize) -> PairModel {
    let cells = if n == 0 {
        vec![
            PairCell {
                cell: Cell::new("v", 0, vec![]),
                in_a: true,
            },
            PairCell {
                cell: Cell::new("w", 0, vec![]),
                in_a: true,
            },
            PairCell {
                cell: Cell::new("e", 1, vec![(1, 1), (0, -1)]),
                in_a: false,
            },
        ]
    } else {
        vec![
            PairCell {
                cell: Cell::new("v", 0, vec![]),
                in_a: true,
            },
            PairCell {
                cell: Cell::new("a", n, vec![]),
                in_a: true,
            },
            PairCell {
                cell: Cell::new("e", n + 1, vec![(1, 1)]),
                in_a: false,
            },
        ]
    };
    PairModel::with_kind(format!("(D^{},S^{n})", n + 1), cells, 0, PairKind::DiskSphere(n)).expect("disk pair")
}

/// `(|X|, v)`.
pub fn pair_space_basepoint(x: &SimplicialComplex, v: usize) -> Result<PairModel> {
    Ok(PairModel::based(&CellModel::from_simplicial(x, v)?))
}

/// `(C|A|, |A|)` based at vertex `v`.
pub fn pair_cone(a: &SimplicialComplex, v: usize) -> Result<PairModel> {
    Ok(PairModel::cone(&CellModel::from_simplicial(a, v)?))
}
