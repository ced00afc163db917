//! Multivariate gcd over the integers by recursive primitive remainder
//! sequences, eliminating `s3`, then `s2`, then `s1`.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::ZPoly;

/// Gcd with positive leading coefficient; `gcd(0, 0) = 0`.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    gcd_rec(a, b, 3)
}

fn normalize(p: &ZPoly) -> ZPoly {
    match p.leading() {
        Some((_, c)) if c.is_negative() => p.negate(),
        _ => p.clone(),
    }
}

fn uses_only(p: &ZPoly, nvars: usize) -> bool {
    p.terms().all(|(e, _)| e[nvars..].iter().all(|&x| x == 0))
}

fn gcd_rec(a: &ZPoly, b: &ZPoly, nvars: usize) -> ZPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if nvars == 0 {
        let ca = a.as_constant().unwrap_or_default();
        let cb = b.as_constant().unwrap_or_default();
        return ZPoly::constant(ca.gcd(&cb));
    }
    if a == b {
        return normalize(a);
    }
    let v = nvars - 1;
    debug_assert!(uses_only(a, nvars) && uses_only(b, nvars));
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd_rec(&ca, &cb, v);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        core::mem::swap(&mut p, &mut q);
    }
    if let Some(bound) = degree_bound(&p, &q, v) {
        if bound == 0 {
            return normalize(&c);
        }
        if bound == q.degree_in(v) && p.div_exact(&q).is_some() {
            return normalize(&normalize(&q).times(&c));
        }
    }
    // Subresultant remainder sequence.
    let mut g = ZPoly::one();
    let mut h = ZPoly::one();
    loop {
        let delta = p.degree_in(v) - q.degree_in(v);
        let r = prem(&p, &q, v);
        if r.is_zero() {
            p = primitive_in(&q, v);
            break;
        }
        if r.degree_in(v) == 0 {
            p = ZPoly::one();
            break;
        }
        let divisor = g.times(&h.pow(delta));
        p = q;
        q = r.div_exact(&divisor).expect("subresultant division is exact");
        g = leading_in(&p, v);
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant division is exact")
        };
    }
    let g = normalize(&p).times(&c);
    normalize(&g)
}

/// `p` with `s_i := vals[i]` for every `i < v`.
fn specialize_below(p: &ZPoly, v: usize, vals: &[i64]) -> ZPoly {
    let mut out = ZPoly::zero();
    for (e, c) in p.terms() {
        let mut k = c.clone();
        for (i, x) in vals.iter().enumerate().take(v) {
            k *= BigInt::from(*x).pow(e[i]);
        }
        let mut m = [0u32; 3];
        m[v] = e[v];
        out.add_term(m, k);
    }
    out
}

/// Upper bound for the degree in `s_{v+1}` of `gcd(p, q)`, read off an
/// image where both leading coefficients survive.
fn degree_bound(p: &ZPoly, q: &ZPoly, v: usize) -> Option<u32> {
    if v == 0 {
        return None;
    }
    let below = |x: &ZPoly| x.terms().any(|(e, _)| e[..v].iter().any(|&k| k > 0));
    if !below(p) && !below(q) {
        return None;
    }
    let (dp, dq) = (p.degree_in(v), q.degree_in(v));
    for attempt in 0..4i64 {
        let vals: [i64; 2] = [3 + 7 * attempt, 5 + 11 * attempt];
        let (ip, iq) = (specialize_below(p, v, &vals), specialize_below(q, v, &vals));
        if ip.degree_in(v) != dp || iq.degree_in(v) != dq || ip.is_zero() || iq.is_zero() {
            continue;
        }
        return Some(gcd_rec(&ip, &iq, v + 1).degree_in(v));
    }
    None
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `s_{v+1}`.
fn content_in(p: &ZPoly, v: usize) -> ZPoly {
    let coeffs: BTreeMap<u32, ZPoly> = p.coefficients_in(v);
    let mut g = ZPoly::zero();
    for c in coeffs.values() {
        g = gcd_rec(&g, c, v);
        if g.as_constant().map(|x| x.is_one()).unwrap_or(false) {
            break;
        }
    }
    g
}

fn primitive_in(p: &ZPoly, v: usize) -> ZPoly {
    let c = content_in(p, v);
    normalize(&p.div_exact(&c).expect("content divides"))
}

fn leading_in(p: &ZPoly, v: usize) -> ZPoly {
    p.coefficients_in(v).remove(&p.degree_in(v)).unwrap_or_default()
}

/// `lc(b)^(deg a - deg b + 1) * a` reduced modulo `b` in `s_{v+1}`.
fn prem(a: &ZPoly, b: &ZPoly, v: usize) -> ZPoly {
    let db = b.degree_in(v);
    let lcb = leading_in(b, v);
    let mut steps = a.degree_in(v) + 1 - db;
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = leading_in(&r, v);
        let mut shift = [0u32; 3];
        shift[v] = dr - db;
        let t = b.times(&lcr).mul_monomial(&shift, &One::one());
        r = r.times(&lcb).minus(&t);
        steps -= 1;
    }
    r.times(&lcb.pow(steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;

    fn s(i: usize) -> ZPoly {
        Poly::var(i)
    }

    #[test]
    fn difference_of_squares() {
        let a = s(0).times(&s(0)).minus(&s(1).times(&s(1)));
        let b = s(0).plus(&s(1));
        assert_eq!(gcd(&a, &b), b);
    }

    #[test]
    fn shared_trivariate_factor() {
        let f = s(0).plus(&s(1)).plus(&s(2).times(&s(2)));
        let g = s(0).times(&s(2)).minus(&ZPoly::constant(3.into()));
        let h1 = s(1).plus(&ZPoly::one());
        let h2 = s(0).minus(&s(2));
        let a = f.times(&g).times(&h1);
        let b = f.times(&g).times(&h2).scale(&6.into());
        let got = gcd(&a, &b);
        let want = f.times(&g);
        let want = if want.leading().unwrap().1.is_negative() { want.negate() } else { want };
        assert_eq!(got, want);
    }

    #[test]
    fn coprime_and_constants() {
        assert_eq!(gcd(&s(0), &s(1)), ZPoly::one());
        assert_eq!(gcd(&ZPoly::constant(6.into()), &ZPoly::constant(4.into())), ZPoly::constant(2.into()));
        let a = s(0).scale(&4.into());
        let b = s(0).times(&s(1)).scale(&6.into());
        assert_eq!(gcd(&a, &b), s(0).scale(&2.into()));
    }
}
