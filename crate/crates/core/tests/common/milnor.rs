//! Milnor number of `xyz + x^p + y^p + z^p` at the origin as
//! `dim C[x,y,z]/(J + m^N)`, with `J` the Jacobian ideal.

use super::linalg::rank_mod;

const PRIMES: [u64; 2] = [1_000_003, 998_244_353];

fn monomials(below: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for deg in 0..below {
        for a in 0..=deg {
            for b in 0..=deg - a {
                out.push([a, b, deg - a - b]);
            }
        }
    }
    out
}

fn quotient_dim(p: u32, n: u32, prime: u64) -> usize {
    let mons = monomials(n);
    let pos = |m: [u32; 3]| mons.iter().position(|&x| x == m);
    let pm = p as u64 % prime;
    // ∂x: yz + p x^{p-1}, and the two permutations.
    let gens: [Vec<([u32; 3], u64)>; 3] = [
        vec![([0, 1, 1], 1), ([p - 1, 0, 0], pm)],
        vec![([1, 0, 1], 1), ([0, p - 1, 0], pm)],
        vec![([1, 1, 0], 1), ([0, 0, p - 1], pm)],
    ];
    let mut rows = Vec::new();
    for g in &gens {
        for m in &mons {
            let mut row = vec![0u64; mons.len()];
            let mut any = false;
            for (e, c) in g {
                let t = [m[0] + e[0], m[1] + e[1], m[2] + e[2]];
                if let Some(i) = pos(t) {
                    row[i] = (row[i] + c) % prime;
                    any = true;
                }
            }
            if any {
                rows.push(row);
            }
        }
    }
    mons.len() - rank_mod(rows, prime)
}

/// `None` if the truncation has not stabilized or the primes disagree.
pub fn milnor_tppp(p: u32) -> Option<usize> {
    let mut seen = None;
    for prime in PRIMES {
        let a = quotient_dim(p, p + 2, prime);
        let b = quotient_dim(p, p + 3, prime);
        if a != b || seen.is_some_and(|s| s != a) {
            return None;
        }
        seen = Some(a);
    }
    seen
}
