use crate::C64;

/// Associated Laguerre polynomial `L_n^α(x)` by upward three-term
/// recurrence.
pub fn laguerre_assoc(n: usize, alpha: f64, x: C64) -> C64 {
    let mut prev = C64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0 + alpha - x) * cur - (mf + alpha) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
