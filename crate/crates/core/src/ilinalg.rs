//! Small dense linear algebra over intervals (cofactor expansion; the
//! matrices here are s×s with s a handful).

use exactnum::Interval;

pub fn det(m: &[Vec<Interval>]) -> Interval {
    let n = m.len();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols)
}

fn det_rec(m: &[Vec<Interval>], row: usize, cols: &[usize]) -> Interval {
    if cols.is_empty() {
        return Interval::one();
    }
    let mut acc = Interval::zero();
    for (k, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = m[row][c].mul(&det_rec(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

fn minor(m: &[Vec<Interval>], skip_r: usize, skip_c: usize) -> Vec<Vec<Interval>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_r)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != skip_c).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Enclosure of the inverse, or None when the determinant encloses 0.
pub fn inverse(m: &[Vec<Interval>]) -> Option<Vec<Vec<Interval>>> {
    let n = m.len();
    let d = det(m);
    if d.contains_zero() {
        return None;
    }
    let dinv = d.recip().ok()?;
    let mut out = vec![vec![Interval::zero(); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let c = det(&minor(m, j, i)).mul(&dinv);
            *x = if (i + j) % 2 == 0 { c } else { c.neg() };
        }
    }
    Some(out)
}

pub fn mat_mul(a: &[Vec<Interval>], b: &[Vec<Interval>]) -> Vec<Vec<Interval>> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|r| (0..cols).map(|j| (0..inner).fold(Interval::zero(), |acc, k| acc.add(&r[k].mul(&b[k][j])))).collect())
        .collect()
}

/// Number of rows certified linearly independent by a greedy nonzero-minor
/// search. A lower bound on the true rank.
pub fn certified_rank(rows: &[Vec<Interval>]) -> usize {
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial = chosen.clone();
        trial.push(i);
        if has_nonzero_minor(rows, &trial) {
            chosen = trial;
        }
    }
    chosen.len()
}

/// Whether some maximal minor of the selected rows is certified nonzero.
pub fn has_nonzero_minor(rows: &[Vec<Interval>], sel: &[usize]) -> bool {
    let k = sel.len();
    if k == 0 {
        return true;
    }
    let ncols = rows[sel[0]].len();
    if k > ncols {
        return false;
    }
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        let sub: Vec<Vec<Interval>> =
            sel.iter().map(|&r| combo.iter().map(|&c| rows[r][c].clone()).collect()).collect();
        if !det(&sub).contains_zero() {
            return true;
        }
        // next k-combination of 0..ncols
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if combo[i] < ncols - k + i {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exactnum::rational::int;

    fn iv(x: i64) -> Interval {
        Interval::point(int(x))
    }

    #[test]
    fn det_and_inverse_of_point_matrix() {
        let m = vec![vec![iv(2), iv(1)], vec![iv(1), iv(1)]];
        assert_eq!(det(&m), iv(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![iv(1), iv(-1)], vec![iv(-1), iv(2)]]);
        assert_eq!(certified_rank(&[vec![iv(1), iv(2)], vec![iv(2), iv(4)], vec![iv(0), iv(1)]]), 2);
    }
}
