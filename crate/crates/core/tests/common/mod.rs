//! Independent oracles: structure constants as a dense cube, a plain
//! Gaussian elimination, and the intersection route to biderivations.
#![allow(dead_code, clippy::needless_range_loop)]

use leibniz_core::linalg::rat;
use leibniz_core::{Algebra, Rat};
use num_traits::{One, Zero};

/// `c[i][j][k]`, the coefficient of `e_k` in `[e_i, e_j]`.
pub type Cube = Vec<Vec<Vec<Rat>>>;

pub fn cube(a: &Algebra) -> Cube {
    let n = a.dim();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a.constant(i, j, k)).collect()).collect())
        .collect()
}

pub fn algebra(c: &Cube) -> Algebra {
    let n = c.len();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !c[i][j][k].is_zero() {
                    entries.push((i, j, k, c[i][j][k].clone()));
                }
            }
        }
    }
    Algebra::from_entries(n, entries).unwrap()
}

/// `[[x,y],z] - [[x,z],y] - [x,[y,z]]` summed over basis triples.
pub fn right_leibniz_ok(c: &Cube) -> bool {
    let n = c.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for t in 0..n {
                    let mut s = Rat::zero();
                    for m in 0..n {
                        s += &c[x][y][m] * &c[m][z][t];
                        s -= &c[x][z][m] * &c[m][y][t];
                        s -= &c[y][z][m] * &c[x][m][t];
                    }
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Row echelon form by plain elimination; returns the nonzero rows.
pub fn echelon(mut rows: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..width {
                    let d = &f * &rows[r][j];
                    rows[i][j] -= d;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    echelon(rows.to_vec()).len()
}

pub fn same_span(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let both: Vec<_> = a.iter().chain(b).cloned().collect();
    ra == rb && rank(&both) == ra
}

/// Kernel basis of the system whose rows are `eqs` over `width` unknowns.
pub fn kernel(eqs: Vec<Vec<Rat>>, width: usize) -> Vec<Vec<Rat>> {
    let e = echelon(eqs);
    let mut pivots = Vec::new();
    for row in &e {
        pivots.push(row.iter().position(|x| !x.is_zero()).unwrap());
    }
    let mut out = Vec::new();
    for free in (0..width).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rat::zero(); width];
        v[free] = Rat::one();
        for (row, &p) in e.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Unknown index of entry `(r, c)` of an `n x n` map; `m(e_c) = sum_r m[r][c] e_r`.
fn idx(n: usize, r: usize, c: usize) -> usize {
    r * n + c
}

/// Derivation equations `d[e_i,e_j] = [d e_i, e_j] + [e_i, d e_j]`.
pub fn der_equations(c: &Cube) -> Vec<Vec<Rat>> {
    map_equations(c, false)
}

/// Anti-derivation equations `D[e_i,e_j] = [D e_i, e_j] - [D e_j, e_i]`.
pub fn antider_equations(c: &Cube) -> Vec<Vec<Rat>> {
    map_equations(c, true)
}

fn map_equations(c: &Cube, anti: bool) -> Vec<Vec<Rat>> {
    let n = c.len();
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![Rat::zero(); n * n];
                for m in 0..n {
                    row[idx(n, k, m)] += &c[i][j][m];
                    row[idx(n, m, i)] -= &c[m][j][k];
                    if anti {
                        row[idx(n, m, j)] += &c[m][i][k];
                    } else {
                        row[idx(n, m, j)] -= &c[i][m][k];
                    }
                }
                eqs.push(row);
            }
        }
    }
    eqs
}

/// Kernel of the compatibility `[e_i, d e_j] = [e_i, D e_j]` restricted to
/// pairs built from separately computed Der and AntiDer bases.
pub fn bider_by_intersection(c: &Cube) -> Vec<Vec<Rat>> {
    let n = c.len();
    let der = kernel(der_equations(c), n * n);
    let anti = kernel(antider_equations(c), n * n);
    let (p, q) = (der.len(), anti.len());
    // Unknowns: coefficients a_s of der[s], then b_t of anti[t].
    let mut eqs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut row = vec![Rat::zero(); p + q];
                for m in 0..n {
                    if c[i][m][k].is_zero() {
                        continue;
                    }
                    for s in 0..p {
                        row[s] += &der[s][idx(n, m, j)] * &c[i][m][k];
                    }
                    for t in 0..q {
                        row[p + t] -= &anti[t][idx(n, m, j)] * &c[i][m][k];
                    }
                }
                eqs.push(row);
            }
        }
    }
    kernel(eqs, p + q)
        .into_iter()
        .map(|coef| {
            let mut v = vec![Rat::zero(); 2 * n * n];
            for s in 0..p {
                for e in 0..n * n {
                    v[e] += &coef[s] * &der[s][e];
                }
            }
            for t in 0..q {
                for e in 0..n * n {
                    v[n * n + e] += &coef[p + t] * &anti[t][e];
                }
            }
            v
        })
        .collect()
}

/// Structure constants after the change of basis `f_i = sum_r p[r][i] e_r`.
pub fn change_basis(c: &Cube, p: &[Vec<Rat>]) -> Cube {
    let n = c.len();
    let pinv = inverse(p).expect("invertible change of basis");
    let mut out = vec![vec![vec![Rat::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            // [f_i, f_j] in e-coordinates.
            let mut v = vec![Rat::zero(); n];
            for a in 0..n {
                if p[a][i].is_zero() {
                    continue;
                }
                for b in 0..n {
                    if p[b][j].is_zero() {
                        continue;
                    }
                    let w = &p[a][i] * &p[b][j];
                    for k in 0..n {
                        v[k] += &w * &c[a][b][k];
                    }
                }
            }
            for k in 0..n {
                out[i][j][k] = (0..n).map(|r| &pinv[k][r] * &v[r]).sum();
            }
        }
    }
    out
}

pub fn inverse(p: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = p.len();
    let rows: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut r = p[i].clone();
            r.extend((0..n).map(|j| if i == j { rat(1) } else { rat(0) }));
            r
        })
        .collect();
    let e = echelon(rows);
    if e.len() < n || (0..n).any(|i| e[i][i].is_zero()) {
        return None;
    }
    Some(e.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn cube_from(n: usize, entries: &[(usize, usize, usize, i64)]) -> Cube {
    let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
    for &(i, j, k, v) in entries {
        c[i][j][k] = rat(v);
    }
    c
}

/// Four-dimensional right Leibniz algebras used as seeds for random
/// changes of basis.
pub fn seeds4() -> Vec<Cube> {
    vec![
        // abelian
        cube_from(4, &[]),
        // null-filiform
        cube_from(4, &[(0, 0, 1, 1), (1, 0, 2, 1), (2, 0, 3, 1)]),
        // first naturally graded filiform
        cube_from(4, &[(0, 0, 2, 1), (1, 0, 2, 1), (2, 0, 3, 1)]),
        // sl2 plus a central line
        cube_from(
            4,
            &[(0, 1, 1, 2), (1, 0, 1, -2), (0, 2, 2, -2), (2, 0, 2, 2), (1, 2, 0, 1), (2, 1, 0, -1)],
        ),
        // two copies of NF_2
        cube_from(4, &[(0, 0, 1, 1), (2, 2, 3, 1)]),
        // [e2,e1]=e2, [e3,e1]=e3, [e1,e3]=-e3, [e4,e1]=e4
        cube_from(4, &[(1, 0, 1, 1), (2, 0, 2, 1), (0, 2, 2, -1), (3, 0, 3, 1)]),
        // Heisenberg plus a line
        cube_from(4, &[(0, 1, 2, 1), (1, 0, 2, -1)]),
    ]
}

/// `count` right Leibniz tables of dimension 4 from random integer changes
/// of basis of [`seeds4`], drawn from a fixed seed.
pub fn random_tables4(seed: u64, count: usize) -> Vec<Cube> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let seeds = seeds4();
    (0..count)
        .map(|_| {
            let c = &seeds[rng.gen_range(0..seeds.len())];
            loop {
                let p: Vec<Vec<Rat>> = (0..4)
                    .map(|_| (0..4).map(|_| rat(rng.gen_range(-2..=2))).collect())
                    .collect();
                if inverse(&p).is_some() {
                    break change_basis(c, &p);
                }
            }
        })
        .collect()
}
