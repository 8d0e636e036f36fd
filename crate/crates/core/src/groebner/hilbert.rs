//! Hilbert series numerators of monomial ideals.
//!
//! For a monomial ideal `M` in `n` variables the Hilbert series of `S/M` is
//! `N(t) / (1 - t)^n`. `N` is computed with the pivot recursion
//! `N(M) = N(M + (p)) + t^deg(p) * N(M : p)` for a variable power `p`,
//! bottoming out when the generators are pairwise coprime.

use crate::polyring::Monomial;

/// Polynomial in `t` with integer coefficients, lowest degree first.
pub type IntPoly = Vec<i64>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &[i64], b: &[i64]) -> IntPoly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] += v;
    }
    trim(out)
}

fn mul(a: &[i64], b: &[i64]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn shift(a: &[i64], k: usize) -> IntPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; k];
    out.extend_from_slice(a);
    out
}

/// `1 - t^k`
fn one_minus_t_pow(k: u32) -> IntPoly {
    if k == 0 {
        return Vec::new();
    }
    let mut p = vec![0; k as usize + 1];
    p[0] = 1;
    p[k as usize] = -1;
    p
}

/// Drops generators divisible by another generator, and duplicates.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Numerator `N(t)` of the Hilbert series of `S/(gens)`.
pub fn hilbert_numerator(gens: &[Monomial]) -> IntPoly {
    numerator(minimalize(gens.to_vec()))
}

fn numerator(gens: Vec<Monomial>) -> IntPoly {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return Vec::new();
    }
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        return gens
            .iter()
            .fold(vec![1], |acc, g| mul(&acc, &one_minus_t_pow(g.degree())));
    }

    let nvars = gens[0].nvars();
    // pivot variable: the one occurring in the most non-pure-power generators
    let mixed: Vec<&Monomial> = gens.iter().filter(|g| g.support().count() > 1).collect();
    let mut counts = vec![0usize; nvars];
    for g in &mixed {
        for v in g.support() {
            counts[v] += 1;
        }
    }
    let var = (0..nvars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).unwrap();
    let mut exps: Vec<u16> = mixed
        .iter()
        .map(|g| g.exponents()[var])
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2].max(1);
    let pivot = Monomial::var_power(nvars, var, e);

    // M + (p)
    let mut with_pivot: Vec<Monomial> = gens
        .iter()
        .filter(|g| !pivot.divides(g))
        .cloned()
        .collect();
    with_pivot.push(pivot);

    // M : p
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut ex = g.exponents().to_vec();
            ex[var] = ex[var].saturating_sub(e);
            Monomial::new(&ex)
        })
        .collect();

    let left = numerator(minimalize(with_pivot));
    let right = numerator(minimalize(colon));
    add(&left, &shift(&right, e as usize))
}

/// Writes `N(t) = (1 - t)^k * Q(t)` with `Q(1) != 0`; returns `(k, Q)`.
/// The zero polynomial returns `(0, [])`.
pub fn factor_one_minus_t(n: &[i64]) -> (usize, IntPoly) {
    let mut q = trim(n.to_vec());
    let mut k = 0;
    while !q.is_empty() && q.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t): q = (1 - t) * r  =>  r_i = sum_{j<=i} q_j
        let mut r = Vec::with_capacity(q.len() - 1);
        let mut acc = 0;
        for c in &q[..q.len() - 1] {
            acc += c;
            r.push(acc);
        }
        q = trim(r);
        k += 1;
    }
    (k, q)
}

/// Krull dimension of `S/M` and the degree (leading Hilbert polynomial
/// coefficient times `(dim-1)!`, i.e. `Q(1)`). `None` for `M = (1)`.
pub fn dimension_and_degree(gens: &[Monomial], nvars: usize) -> Option<(usize, i64)> {
    let num = hilbert_numerator(gens);
    if num.is_empty() {
        return None;
    }
    let (k, q) = factor_one_minus_t(&num);
    Some((nvars - k, q.iter().sum()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::new(e)
    }

    /// Counts standard monomials of degree `deg` by brute force.
    fn brute_hilbert(gens: &[Monomial], nvars: usize, deg: u16) -> usize {
        fn rec(prefix: &mut Vec<u16>, left: u16, nvars: usize, gens: &[Monomial], count: &mut usize) {
            if prefix.len() == nvars - 1 {
                prefix.push(left);
                let mono = Monomial::new(prefix);
                if !gens.iter().any(|g| g.divides(&mono)) {
                    *count += 1;
                }
                prefix.pop();
                return;
            }
            for e in 0..=left {
                prefix.push(e);
                rec(prefix, left - e, nvars, gens, count);
                prefix.pop();
            }
        }
        let mut count = 0;
        rec(&mut Vec::new(), deg, nvars, gens, &mut count);
        count
    }

    fn series_coeff(num: &[i64], nvars: usize, deg: usize) -> i64 {
        // coefficient of t^deg in N(t) / (1-t)^nvars
        let binom = |a: i64, b: i64| -> i64 {
            if b < 0 || a < b {
                return 0;
            }
            (0..b).fold(1i64, |acc, i| acc * (a - i) / (i + 1))
        };
        num.iter()
            .enumerate()
            .filter(|(i, _)| *i <= deg)
            .map(|(i, c)| c * binom((deg - i + nvars - 1) as i64, nvars as i64 - 1))
            .sum()
    }

    #[test]
    fn numerator_matches_brute_force() {
        let cases: Vec<(Vec<Monomial>, usize)> = vec![
            (vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 3, 1])], 3),
            (vec![m(&[1, 1, 1]), m(&[2, 0, 1]), m(&[0, 2, 2]), m(&[3, 1, 0])], 3),
            (vec![m(&[0, 2, 1, 1]), m(&[1, 0, 3, 0]), m(&[2, 2, 0, 0]), m(&[1, 1, 1, 1])], 4),
        ];
        for (gens, nvars) in cases {
            let num = hilbert_numerator(&gens);
            for deg in 0..10 {
                assert_eq!(
                    series_coeff(&num, nvars, deg) as usize,
                    brute_hilbert(&gens, nvars, deg as u16),
                    "{gens:?} degree {deg}"
                );
            }
        }
    }

    #[test]
    fn points_on_the_line() {
        // (x0^3) in P^1: three points counted with multiplicity
        assert_eq!(dimension_and_degree(&[m(&[3, 0])], 2), Some((1, 3)));
        // irrelevant ideal: empty projective scheme
        assert_eq!(dimension_and_degree(&[m(&[1, 0]), m(&[0, 1])], 2), Some((0, 1)));
        assert_eq!(dimension_and_degree(&[m(&[0, 0])], 2), None);
    }

    #[test]
    fn surface_has_dimension_three() {
        assert_eq!(dimension_and_degree(&[m(&[0, 1, 1, 0])], 4), Some((3, 2)));
    }
}
