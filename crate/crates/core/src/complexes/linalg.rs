//! Dense linear algebra over `GF(p)`.

/// Rank of a dense matrix, destroying it.
pub fn rank_mod_p(rows: &mut [Vec<u32>], p: u32) -> usize {
    let p64 = p as u64;
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank][col..].iter_mut() {
            *x = (*x as u64 * inv as u64 % p64) as u32;
        }
        let (top, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for r in rest.iter_mut() {
            let f = r[col];
            if f == 0 {
                continue;
            }
            let nf = p64 - f as u64;
            for (x, &y) in r[col..].iter_mut().zip(&pivot_row[col..]) {
                if y != 0 {
                    *x = ((*x as u64 + nf * y as u64) % p64) as u32;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r, mut b, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}
