//! Smith normal form and the abelian-group data derived from it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries `d₁ | d₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    u_inv: IntMatrix,
}

impl SmithDecomposition {
    /// The diagonal of `D`, of length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// The inverse of `U`, tracked during the reduction.
    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }
}

/// Computes the Smith normal form by row/column reduction with the
/// smallest-absolute-value pivot, fixing divisibility as it goes.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    // Row operations are mirrored on U (left) and inversely on U⁻¹ (right).
    let swap_rows = |d: &mut IntMatrix, u: &mut IntMatrix, ui: &mut IntMatrix, i: usize, j: usize| {
        d.swap_rows(i, j);
        u.swap_rows(i, j);
        ui.swap_cols(i, j);
    };
    let add_row = |d: &mut IntMatrix,
                   u: &mut IntMatrix,
                   ui: &mut IntMatrix,
                   dst: usize,
                   src: usize,
                   q: &BigInt| {
        d.add_row_multiple(dst, src, q);
        u.add_row_multiple(dst, src, q);
        ui.add_col_multiple(src, dst, &-q);
    };

    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let e = &d[(i, j)];
                    if !e.is_zero()
                        && pivot.is_none_or(|(pi, pj)| e.abs() < d[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(u, d, v, u_inv);
            };
            swap_rows(&mut d, &mut u, &mut u_inv, t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                add_row(&mut d, &mut u, &mut u_inv, i, t, &-q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility fix-up: pull an offending row into row t.
            let p = d[(t, t)].clone();
            let offending = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offending {
                Some(i) => add_row(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    finish(u, d, v, u_inv)
}

fn finish(u: IntMatrix, d: IntMatrix, v: IntMatrix, u_inv: IntMatrix) -> SmithDecomposition {
    SmithDecomposition { u, d, v, u_inv }
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k`
/// with `t₁ | t₂ | … | t_k` and every `tᵢ > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn free(rank: usize) -> Self {
        AbelianGroupStructure {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum with `Z^extra`.
    pub fn plus_free(&self, extra: usize) -> Self {
        AbelianGroupStructure {
            free_rank: self.free_rank + extra,
            torsion: self.torsion.clone(),
        }
    }

    /// Number of coordinates in the canonical basis (free, then torsion).
    pub fn generator_count(&self) -> usize {
        self.free_rank + self.torsion.len()
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The quotient `Z^rows / image(A)` for `A: Z^cols → Z^rows`, together with
/// the coordinate map into its canonical basis.
///
/// Canonical basis: the free generators first, then one generator per
/// invariant factor `d > 1`, each torsion coordinate reduced into `[0, d)`.
#[derive(Clone, Debug)]
pub struct Cokernel {
    snf: SmithDecomposition,
    structure: AbelianGroupStructure,
    rank: usize,
}

impl Cokernel {
    pub fn new(a: &IntMatrix) -> Self {
        let snf = smith_normal_form(a);
        let diag = snf.diagonal();
        let rank = diag.iter().filter(|x| !x.is_zero()).count();
        let torsion = diag[..rank]
            .iter()
            .filter(|x| !x.is_one())
            .cloned()
            .collect();
        let structure = AbelianGroupStructure {
            free_rank: a.rows() - rank,
            torsion,
        };
        Cokernel {
            snf,
            structure,
            rank,
        }
    }

    pub fn structure(&self) -> &AbelianGroupStructure {
        &self.structure
    }

    fn torsion_rows(&self) -> Vec<(usize, BigInt)> {
        (0..self.rank)
            .filter_map(|i| {
                let d = &self.snf.d[(i, i)];
                (!d.is_one()).then(|| (i, d.clone()))
            })
            .collect()
    }

    /// Coordinates of the class of `x ∈ Z^rows` in the canonical basis.
    pub fn coordinates(&self, x: &[BigInt]) -> Vec<BigInt> {
        let y = self.snf.u.apply(x);
        let mut out: Vec<BigInt> = y[self.rank..].to_vec();
        for (i, d) in self.torsion_rows() {
            out.push(y[i].mod_floor(&d));
        }
        out
    }

    /// A representative in `Z^rows` of the class with the given coordinates.
    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.structure.generator_count());
        let rows = self.snf.u.rows();
        let mut y = vec![BigInt::zero(); rows];
        let free = self.structure.free_rank;
        for (k, c) in coords[..free].iter().enumerate() {
            y[self.rank + k] = c.clone();
        }
        for ((i, _), c) in self.torsion_rows().into_iter().zip(&coords[free..]) {
            y[i] = c.clone();
        }
        self.snf.u_inverse().apply(&y)
    }

    /// Reduces coordinates: torsion entries into `[0, d)`, free entries untouched.
    pub fn normalize(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let free = self.structure.free_rank;
        let mut out = coords[..free].to_vec();
        for (c, d) in coords[free..].iter().zip(&self.structure.torsion) {
            out.push(c.mod_floor(d));
        }
        out
    }
}

/// Structure of `Z^rows / image(A)`.
pub fn cokernel_structure(a: &IntMatrix) -> AbelianGroupStructure {
    Cokernel::new(a).structure
}

pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// Rank of the integer kernel of `A: Z^cols → Z^rows`.
pub fn kernel_rank(a: &IntMatrix) -> usize {
    a.cols() - rank(a)
}

/// All integer solutions of `G · x = b`: `particular + Σ kᵢ · kernel[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<BigInt>,
    pub kernel: Vec<Vec<BigInt>>,
}

/// Solves `G · x = b` over `Z`, or returns `None` when no integer solution
/// exists.
pub fn solve_integer(g: &IntMatrix, b: &[BigInt]) -> Option<IntegerSolution> {
    assert_eq!(b.len(), g.rows(), "right-hand side length mismatch");
    let snf = smith_normal_form(g);
    let c = snf.u.apply(b);
    let r = snf.rank();
    let mut y = vec![BigInt::zero(); g.cols()];
    for i in 0..r {
        let d = &snf.d[(i, i)];
        if !c[i].is_multiple_of(d) {
            return None;
        }
        y[i] = &c[i] / d;
    }
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let particular = snf.v.apply(&y);
    let kernel = (r..g.cols()).map(|j| snf.v.column(j)).collect();
    Some(IntegerSolution { particular, kernel })
}
