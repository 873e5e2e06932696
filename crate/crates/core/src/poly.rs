//! Monic polynomials over a prime field F_q, the maximal-ideal labels of
//! the polynomial ring over F_q.
//!
//! Coefficients are stored in ascending degree order, reduced mod q, with the
//! leading coefficient nonzero. Canonical prime labels are monic irreducible
//! polynomials of degree >= 1.

use crate::arith::{mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Trims trailing zeros so the leading coefficient is nonzero (empty = zero poly).
pub fn normalize(mut coeffs: Vec<u64>, q: u64) -> Vec<u64> {
    for c in coeffs.iter_mut() {
        *c %= q;
    }
    while coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    coeffs
}

pub fn degree(coeffs: &[u64]) -> usize {
    assert!(!coeffs.is_empty(), "zero polynomial has no degree here");
    coeffs.len() - 1
}

pub fn is_monic(coeffs: &[u64]) -> bool {
    coeffs.last() == Some(&1)
}

pub fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, q)) % q;
        }
    }
    normalize(out, q)
}

/// Remainder of a mod b over F_q; b must be nonzero.
pub fn rem(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = inverse_mod(*b.last().unwrap(), q);
    while r.len() > db {
        let dr = r.len() - 1;
        let factor = mul_mod(r[dr], lead_inv, q);
        if factor != 0 {
            for (k, &bc) in b.iter().enumerate() {
                let idx = dr - db + k;
                let sub = mul_mod(factor, bc, q);
                r[idx] = (r[idx] + q - sub) % q;
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
    }
    r
}

fn inverse_mod(a: u64, q: u64) -> u64 {
    // q prime, a nonzero mod q
    pow_mod(a % q, q - 2, q)
}

/// Difference a - b mod q.
pub fn sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] = c % q;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] = (out[i] + q - c % q) % q;
    }
    normalize(out, q)
}

/// Monic greatest common divisor over F_q.
pub fn gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, q);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        if lead != 1 {
            let inv = inverse_mod(lead, q);
            for c in a.iter_mut() {
                *c = mul_mod(*c, inv, q);
            }
        }
    }
    a
}

fn pow_mod_poly(base: &[u64], mut exp: u64, modulus: &[u64], q: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, modulus, q);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, q), modulus, q);
        }
        b = rem(&mul(&b, &b, q), modulus, q);
        exp >>= 1;
    }
    acc
}

/// x^(q^k) reduced mod f, by iterating the Frobenius map.
fn frobenius_power(k: usize, f: &[u64], q: u64) -> Vec<u64> {
    let mut t = rem(&[0, 1], f, q);
    for _ in 0..k {
        t = pow_mod_poly(&t, q, f, q);
    }
    t
}

/// Irreducibility over F_q: f of degree d is irreducible iff x^(q^d) = x
/// mod f and x^(q^(d/r)) - x is coprime to f for every prime r dividing d.
/// Polynomial in d and log q, so large inputs stay decidable.
pub fn is_irreducible(coeffs: &[u64], q: u64) -> bool {
    if coeffs.len() < 2 {
        return false; // constants are units or zero
    }
    let d = degree(coeffs);
    if d == 1 {
        return true;
    }
    let x = rem(&[0, 1], coeffs, q);
    if frobenius_power(d, coeffs, q) != x {
        return false;
    }
    for (r, _) in crate::arith::factor_u64(d as u64) {
        let h = frobenius_power(d / r as usize, coeffs, q);
        let diff = sub(&h, &x, q);
        if gcd(&diff, coeffs, q).len() != 1 {
            return false;
        }
    }
    true
}

fn monic_first(deg: usize) -> Vec<u64> {
    let mut c = vec![0u64; deg + 1];
    c[deg] = 1;
    c
}

/// Advances the non-leading coefficients as a base-q odometer with the most
/// significant digit at the highest degree. Returns false when exhausted.
fn monic_next(coeffs: &mut [u64], q: u64) -> bool {
    let deg = coeffs.len() - 1;
    for i in 0..deg {
        if coeffs[i] + 1 < q {
            coeffs[i] += 1;
            for c in coeffs.iter_mut().take(i) {
                *c = 0;
            }
            return true;
        }
    }
    false
}

/// Streams all monic irreducible polynomials over F_q in canonical order:
/// ascending degree, then ascending coefficient tuples compared from the
/// highest degree downwards.
pub fn irreducibles(q: u64) -> impl Iterator<Item = Vec<u64>> {
    IrreducibleIter {
        q,
        current: monic_first(1),
        started: false,
    }
}

struct IrreducibleIter {
    q: u64,
    current: Vec<u64>,
    started: bool,
}

impl Iterator for IrreducibleIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        loop {
            if self.started {
                if !monic_next(&mut self.current, self.q) {
                    self.current = monic_first(self.current.len());
                }
            } else {
                self.started = true;
            }
            if is_irreducible(&self.current, self.q) {
                return Some(self.current.clone());
            }
        }
    }
}

/// Canonical order on same-field polynomials: degree first, then coefficients
/// from the highest degree downwards. Matches the iteration order above.
pub fn cmp_polys(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().rev().cmp(b.iter().rev()))
}

pub fn format_poly(coeffs: &[u64]) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".into(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        terms.push(term);
    }
    terms.join("+")
}

/// Parses expressions like "x^3+2x+1" (also accepting "2*x^2") over F_q.
pub fn parse_poly(s: &str, q: u64) -> Result<Vec<u64>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Input("empty polynomial".into()));
    }
    let mut coeffs: Vec<u64> = Vec::new();
    for term in compact.split('+') {
        if term.is_empty() {
            return Err(Error::Input(format!("bad polynomial syntax: {s}")));
        }
        let (coeff, deg) = parse_term(term, q)?;
        if deg > 64 {
            return Err(Error::Input(format!("polynomial degree {deg} is out of range")));
        }
        if coeffs.len() < deg + 1 {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] = (coeffs[deg] + coeff) % q;
    }
    Ok(normalize(coeffs, q))
}

fn parse_term(term: &str, q: u64) -> Result<(u64, usize)> {
    let bad = || Error::Input(format!("bad polynomial term: {term}"));
    match term.find('x') {
        None => {
            let c: u64 = term.parse().map_err(|_| bad())?;
            Ok((c % q, 0))
        }
        Some(pos) => {
            let head = term[..pos].trim_end_matches('*');
            let coeff = if head.is_empty() { 1 } else { head.parse().map_err(|_| bad())? };
            let tail = &term[pos + 1..];
            let deg = if tail.is_empty() {
                1
            } else {
                let exp = tail.strip_prefix('^').ok_or_else(bad)?;
                exp.parse().map_err(|_| bad())?
            };
            Ok((coeff % q, deg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial division against every monic polynomial of degree <= deg/2:
    /// slow but obviously correct, the oracle for the Frobenius-based test.
    fn is_irreducible_by_trial_division(coeffs: &[u64], q: u64) -> bool {
        if coeffs.len() < 2 {
            return false;
        }
        let d = degree(coeffs);
        if d == 1 {
            return true;
        }
        for dd in 1..=d / 2 {
            let mut divisor = monic_first(dd);
            loop {
                if rem(coeffs, &divisor, q).is_empty() {
                    return false;
                }
                if !monic_next(&mut divisor, q) {
                    break;
                }
            }
        }
        true
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for q in [2u64, 3, 5] {
            for d in 1..=if q == 2 { 6 } else { 4 } {
                let mut f = monic_first(d);
                loop {
                    assert_eq!(
                        is_irreducible(&f, q),
                        is_irreducible_by_trial_division(&f, q),
                        "disagreement for {} over GF({q})",
                        format_poly(&f)
                    );
                    if !monic_next(&mut f, q) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibility_handles_large_degrees() {
        // x^64 + x^4 + x^3 + x + 1 is a known irreducible over GF(2);
        // x^64 + 1 = (x+1)^64 is not
        let mut f = vec![0u64; 65];
        f[64] = 1;
        f[4] = 1;
        f[3] = 1;
        f[1] = 1;
        f[0] = 1;
        assert!(is_irreducible(&f, 2));
        let mut g = vec![0u64; 65];
        g[64] = 1;
        g[0] = 1;
        assert!(!is_irreducible(&g, 2));
    }

    #[test]
    fn irreducibility_over_f2() {
        // x^2+x+1 is the unique irreducible quadratic over F_2
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)^2
        assert!(!is_irreducible(&[0, 1, 1], 2)); // x(x+1)
        assert!(!is_irreducible(&[1], 2));
    }

    #[test]
    fn irreducible_stream_matches_known_counts() {
        // Over F_2: 2 of degree 1, 1 of degree 2, 2 of degree 3
        let first: Vec<_> = irreducibles(2).take(5).collect();
        assert_eq!(
            first,
            vec![
                vec![0, 1],       // x
                vec![1, 1],       // x+1
                vec![1, 1, 1],    // x^2+x+1
                vec![1, 1, 0, 1], // x^3+x+1
                vec![1, 0, 1, 1], // x^3+x^2+1
            ]
        );
        // Over F_3: 3 linear, (9-3)/2 = 3 quadratic irreducibles
        let quads: Vec<_> = irreducibles(3).skip(3).take(3).collect();
        for f in &quads {
            assert_eq!(degree(f), 2);
            assert!(is_irreducible(f, 3));
        }
    }

    #[test]
    fn parse_format_roundtrip() {
        for s in ["x", "x+1", "x^2+x+1", "2x^3+x+2", "x^4+2"] {
            let p = parse_poly(s, 3).unwrap();
            assert_eq!(format_poly(&p), *s);
        }
        assert_eq!(parse_poly("x^2 + 2*x + 4", 3).unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn remainder_agrees_with_multiplication() {
        let q = 5;
        let a = vec![2, 3, 1]; // x^2+3x+2 = (x+1)(x+2)
        let b = vec![1, 1];
        assert!(rem(&a, &b, q).is_empty());
        let prod = mul(&[1, 1], &[2, 1], q);
        assert_eq!(prod, a);
        assert_eq!(rem(&[4, 0, 1], &[2, 1], q), vec![3]); // x^2+4 mod (x+2) = 8 = 3
    }
}
