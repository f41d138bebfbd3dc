//! Test-only oracles, independent of the crate's matrix path.
//!
//! States are sparse maps from `(s, n)` to amplitudes in the untruncated
//! space: `s` is the orthofermion level, `n` the boson occupation with no
//! upper bound. Operators are applied by their defining ladder rules.

#![allow(dead_code)]

use std::collections::BTreeMap;

use orthofermion::Complex;

pub type State = BTreeMap<(usize, usize), Complex>;

pub fn basis(s: usize, n: usize) -> State {
    let mut st = State::new();
    st.insert((s, n), Complex::new(1.0, 0.0));
    st
}

fn push(out: &mut State, key: (usize, usize), z: Complex) {
    if z.norm() != 0.0 {
        *out.entry(key).or_insert(Complex::new(0.0, 0.0)) += z;
    }
}

pub fn add(x: &State, y: &State) -> State {
    let mut out = x.clone();
    for (k, z) in y {
        push(&mut out, *k, *z);
    }
    out
}

pub fn scale(z: Complex, x: &State) -> State {
    x.iter().map(|(k, v)| (*k, z * v)).collect()
}

pub fn sub(x: &State, y: &State) -> State {
    add(x, &scale(Complex::new(-1.0, 0.0), y))
}

pub fn max_abs(x: &State) -> f64 {
    x.values().map(|z| z.norm()).fold(0.0, f64::max)
}

/// a|n> = sqrt(n)|n-1>
pub fn lower(x: &State) -> State {
    let mut out = State::new();
    for (&(s, n), z) in x {
        if n > 0 {
            push(&mut out, (s, n - 1), z * (n as f64).sqrt());
        }
    }
    out
}

/// a^dag|n> = sqrt(n+1)|n+1>
pub fn raise(x: &State) -> State {
    let mut out = State::new();
    for (&(s, n), z) in x {
        push(&mut out, (s, n + 1), z * ((n + 1) as f64).sqrt());
    }
    out
}

/// c_alpha|alpha> = |0>
pub fn c(alpha: usize, x: &State) -> State {
    let mut out = State::new();
    for (&(s, n), z) in x {
        if s == alpha {
            push(&mut out, (0, n), *z);
        }
    }
    out
}

/// c_alpha^dag|0> = |alpha>
pub fn c_dag(alpha: usize, x: &State) -> State {
    let mut out = State::new();
    for (&(s, n), z) in x {
        if s == 0 {
            push(&mut out, (alpha, n), *z);
        }
    }
    out
}

/// H = a^dag a + N, diagonal with energy n + [s >= 1].
pub fn hamiltonian(x: &State) -> State {
    x.iter()
        .map(|(&(s, n), z)| ((s, n), z * (n as f64 + if s >= 1 { 1.0 } else { 0.0 })))
        .filter(|(_, z)| z.norm() != 0.0)
        .collect()
}

/// Zn generator a c_1^dag + sum c_a^dag c_{a-1} + a^dag c_p.
pub fn q_zn(p: usize, x: &State) -> State {
    let mut out = lower(&c_dag(1, x));
    for alpha in 2..=p {
        out = add(&out, &c_dag(alpha, &c(alpha - 1, x)));
    }
    add(&out, &raise(&c(p, x)))
}

/// Z2 generator with factor `k`: k (a sum_{j<=r} c_{s(j)}^dag + a^dag sum_{j>r} c_{s(j)}).
pub fn q_z2(perm: &[usize], r: usize, k: f64, x: &State) -> State {
    let mut out = State::new();
    for &g in &perm[..r] {
        out = add(&out, &lower(&c_dag(g, x)));
    }
    for &g in &perm[r..] {
        out = add(&out, &raise(&c(g, x)));
    }
    scale(Complex::new(k, 0.0), &out)
}

/// Adjoint of the Z2 generator (real factor).
pub fn q_z2_dag(perm: &[usize], r: usize, k: f64, x: &State) -> State {
    let mut out = State::new();
    for &g in &perm[..r] {
        out = add(&out, &c(g, &raise(x)));
    }
    for &g in &perm[r..] {
        out = add(&out, &c_dag(g, &lower(x)));
    }
    scale(Complex::new(k, 0.0), &out)
}

/// Residual of `{Q^2,Q^dag} + Q Q^dag Q - 2HQ` on `|s,n>`.
pub fn z2_cubic_residual(perm: &[usize], r: usize, k: f64, s: usize, n: usize) -> f64 {
    let q = |x: &State| q_z2(perm, r, k, x);
    let qd = |x: &State| q_z2_dag(perm, r, k, x);
    let v = basis(s, n);
    let lhs = add(&add(&q(&q(&qd(&v))), &qd(&q(&q(&v)))), &q(&qd(&q(&v))));
    let rhs = scale(Complex::new(2.0, 0.0), &hamiltonian(&q(&v)));
    max_abs(&sub(&lhs, &rhs))
}

/// Matrix unit algebra: `e_{ij} e_{kl} = delta_{jk} e_{il}`.
pub fn unit_product(
    x: Option<(usize, usize)>,
    y: Option<(usize, usize)>,
) -> Option<(usize, usize)> {
    match (x, y) {
        (Some((i, j)), Some((k, l))) if j == k => Some((i, l)),
        _ => None,
    }
}

/// Number of basis states `(s, n)` with `n + [s >= 1] == e`, by enumeration.
pub fn level_count(p: usize, e: usize) -> usize {
    (0..=p)
        .flat_map(|s| (0..=e).map(move |n| (s, n)))
        .filter(|&(s, n)| n + usize::from(s >= 1) == e)
        .count()
}
