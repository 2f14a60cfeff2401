//! The integral symplectic group `Sp(2g, Z)` in the basis
//! `(a₁, …, a_g, b₁, …, b_g)` with intersection form `J = [[0, I], [−I, 0]]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use super::IntMatrix;

pub fn standard_form(genus: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j[(i, genus + i)] = BigInt::one();
        j[(genus + i, i)] = -BigInt::one();
    }
    j
}

/// `Mᵀ · J · M = J`. Matrices of odd or non-square shape are never symplectic.
pub fn is_symplectic(m: &IntMatrix) -> bool {
    if !m.is_square() || !m.rows().is_multiple_of(2) {
        return false;
    }
    let j = standard_form(m.rows() / 2);
    &(&m.transpose() * &j) * m == j
}

/// Elementary generators: the symplectic transvections
/// `x ↦ x + ω(x, v) v` along `v = eᵢ` and `v = eᵢ + eⱼ`, `v = eᵢ − eⱼ`.
/// Together they generate `Sp(2g, Z)`.
pub fn elementary_generators(genus: usize) -> Vec<IntMatrix> {
    let n = 2 * genus;
    let j = standard_form(genus);
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        vectors.push(v);
        for k in i + 1..n {
            for s in [1, -1] {
                let mut w = vec![0; n];
                w[i] = 1;
                w[k] = s;
                vectors.push(w);
            }
        }
    }
    vectors
        .into_iter()
        .map(|v| transvection(&j, &v))
        .collect()
}

/// Matrix of `x ↦ x + (xᵀ J v) v`.
fn transvection(j: &IntMatrix, v: &[i64]) -> IntMatrix {
    let n = v.len();
    let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    let jv = j.apply(&v);
    let mut t = IntMatrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            if !v[r].is_zero() && !jv[c].is_zero() {
                t[(r, c)] += &v[r] * &jv[c];
            }
        }
    }
    t
}

/// Inverse of a symplectic matrix: `M⁻¹ = −J Mᵀ J`.
pub fn symplectic_inverse(m: &IntMatrix) -> IntMatrix {
    let j = standard_form(m.rows() / 2);
    -&(&(&j * &m.transpose()) * &j)
}

/// A random product of `steps` elementary generators or their inverses.
pub fn random_symplectic<R: Rng + ?Sized>(rng: &mut R, genus: usize, steps: usize) -> IntMatrix {
    let gens = elementary_generators(genus);
    let mut m = IntMatrix::identity(2 * genus);
    if gens.is_empty() {
        return m;
    }
    for _ in 0..steps {
        let g = &gens[rng.gen_range(0..gens.len())];
        m = if rng.gen_bool(0.5) {
            &m * g
        } else {
            &m * &symplectic_inverse(g)
        };
    }
    m
}
