//! Checks the bundled Conway table from first principles: primitivity,
//! compatibility with every proper subfield, and minimality in the standard
//! ordering. Plain `u64` polynomial arithmetic mod p, low degree first.

use recur2code::gf::{conway_entries, conway_polynomial, nt};

const EXHAUSTIVE_LIMIT: u64 = 1 << 12;

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let k = m.len() - 1;
    let lead_inv = nt::inv_mod(m[k], p).unwrap();
    while r.len() > k {
        let c = r.pop().unwrap() * lead_inv % p;
        let shift = r.len() - k;
        for (i, &mi) in m[..k].iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
    }
    trim(r)
}

fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

/// x has order exactly p^k - 1 modulo m (which forces m irreducible).
fn is_primitive(m: &[u64], p: u64) -> bool {
    let k = m.len() as u32 - 1;
    let n = p.pow(k) - 1;
    if m[0] == 0 {
        return false;
    }
    let x = [0, 1];
    if powmod(&x, n, m, p) != [1] {
        return false;
    }
    nt::prime_factors(n).into_iter().all(|l| powmod(&x, n / l, m, p) != [1])
}

/// f_d(x^((p^k-1)/(p^d-1))) = 0 mod m for every proper divisor d of k.
fn is_compatible(m: &[u64], p: u64, table: impl Fn(u32) -> Vec<u64>) -> bool {
    let k = m.len() as u32 - 1;
    nt::divisors(k as u64).into_iter().map(|d| d as u32).filter(|&d| d < k).all(|d| {
        let fd = table(d);
        let y = powmod(&[0, 1], (p.pow(k) - 1) / (p.pow(d) - 1), m, p);
        let mut acc = vec![0];
        for &c in fd.iter().rev() {
            acc = mulmod(&acc, &y, m, p);
            acc[0] = (acc[0] + c) % p;
            acc = trim(acc);
        }
        acc == [0]
    })
}

fn entry(p: u64, k: u32) -> Vec<u64> {
    conway_polynomial(p, k).unwrap_or_else(|| panic!("no entry for ({p},{k})")).into_iter().map(u64::from).collect()
}

/// Candidate with ordering key `alpha`, where m = x^k + sum (-1)^(k-i) alpha_i x^i.
fn from_key(alpha: &[u64], p: u64) -> Vec<u64> {
    let k = alpha.len();
    let mut m = vec![0; k + 1];
    m[k] = 1;
    for (j, &a) in alpha.iter().enumerate() {
        let i = k - 1 - j;
        m[i] = if (k - i).is_multiple_of(2) { a } else { (p - a) % p };
    }
    m
}

#[test]
fn table_covers_small_fields() {
    let entries = conway_entries();
    for q in 2..=(1u64 << 20) {
        if let Some((p, k)) = nt::prime_power(q) {
            if k >= 2 || p <= 13 {
                assert!(entries.contains(&(p, k)), "missing ({p},{k})");
            }
        }
    }
}

#[test]
fn every_entry_is_monic_primitive_and_compatible() {
    for (p, k) in conway_entries() {
        let m = entry(p, k);
        assert_eq!(m.len(), k as usize + 1);
        assert_eq!(m[k as usize], 1, "({p},{k}) not monic");
        assert!(m.iter().all(|&c| c < p));
        assert!(is_primitive(&m, p), "({p},{k}) not primitive");
        assert!(is_compatible(&m, p, |d| entry(p, d)), "({p},{k}) not compatible");
    }
}

#[test]
fn small_entries_are_minimal() {
    for (p, k) in conway_entries() {
        let q = p.pow(k);
        if q > EXHAUSTIVE_LIMIT {
            continue;
        }
        let mut alpha = vec![0u64; k as usize];
        let first = loop {
            let m = from_key(&alpha, p);
            if is_primitive(&m, p) && is_compatible(&m, p, |d| entry(p, d)) {
                break m;
            }
            // Increment alpha lexicographically, last position fastest.
            let mut i = alpha.len();
            loop {
                i -= 1;
                alpha[i] += 1;
                if alpha[i] < p {
                    break;
                }
                alpha[i] = 0;
            }
        };
        assert_eq!(first, entry(p, k), "({p},{k}) is not the least compatible primitive polynomial");
    }
}

#[test]
fn known_values() {
    let known: [(u64, u32, &[u64]); 12] = [
        (2, 2, &[1, 1, 1]),
        (2, 3, &[1, 1, 0, 1]),
        (2, 4, &[1, 1, 0, 0, 1]),
        (2, 5, &[1, 0, 1, 0, 0, 1]),
        (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
        (3, 2, &[2, 2, 1]),
        (3, 3, &[1, 2, 0, 1]),
        (3, 4, &[2, 0, 0, 2, 1]),
        (5, 2, &[2, 4, 1]),
        (5, 3, &[3, 3, 0, 1]),
        (7, 2, &[3, 6, 1]),
        (11, 2, &[2, 7, 1]),
    ];
    for (p, k, m) in known {
        assert_eq!(entry(p, k), m, "({p},{k})");
    }
}
