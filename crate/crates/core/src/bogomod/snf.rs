//! Smith normal form over the local ring `Z/p^v`.

/// Exponents `k` of the nonzero diagonal entries `p^k` (with `k < v`) of the
/// Smith form of `rows`, ascending, plus the number of zero diagonal entries.
/// The cokernel of the row space is `prod Z/p^k x (Z/p^v)^zeros`.
pub fn smith_exponents(p: u64, v: u32, rows: &[Vec<u64>], ncols: usize) -> (Vec<u32>, usize) {
    let m = p.pow(v);
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % m).collect()).collect();
    let nrows = a.len();
    let valuation = |mut x: u64| -> u32 {
        let mut k = 0;
        while x % p == 0 {
            x /= p;
            k += 1;
        }
        k
    };
    let mut exps = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // entry of minimal valuation in the remaining block
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let k = valuation(x);
                    if best.is_none_or(|b| k < b.0) {
                        best = Some((k, i, j));
                    }
                }
            }
        }
        let Some((k, i, j)) = best else { break };
        a.swap(t, i);
        for row in a.iter_mut() {
            row.swap(t, j);
        }
        // normalize the pivot to p^k
        let pk = p.pow(k);
        let unit = super::galois::inv_mod(a[t][t] / pk, m);
        for x in a[t].iter_mut() {
            *x = *x * unit % m;
        }
        for r in 0..nrows {
            if r != t && a[r][t] != 0 {
                let c = a[r][t] / pk;
                for col in t..ncols {
                    let sub = c * a[t][col] % m;
                    a[r][col] = (a[r][col] + m - sub) % m;
                }
            }
        }
        for col in t + 1..ncols {
            if a[t][col] != 0 {
                let c = a[t][col] / pk;
                for row in a.iter_mut() {
                    let sub = c * row[t] % m;
                    row[col] = (row[col] + m - sub) % m;
                }
            }
        }
        exps.push(k);
        t += 1;
    }
    let zeros = ncols - t;
    exps.retain(|&k| k > 0);
    exps.sort_unstable();
    (exps, zeros)
}
