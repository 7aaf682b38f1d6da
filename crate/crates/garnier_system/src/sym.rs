use crate::{BEval, GarnierError, GarnierState, ProjPoint};

/// Adjacent transposition `s_i` of the singular points, `0 <= i <= 2m+4`.
///
/// For `i <= 2m+1` the kernels swap with the points; `s_{2m+2}` brings
/// `u_{2m+3}` into the kernel range and takes its kernel as
/// `(B12(u_{2m+3}) : -B11(u_{2m+3}))`; the last two only swap points.
pub fn sym_action(s: &GarnierState, i: usize) -> Result<GarnierState, GarnierError> {
    let m = s.m;
    if i > 2 * m + 4 {
        return Err(GarnierError::IndexOutOfRange(i));
    }
    let mut t = s.clone();
    t.u.swap(i, i + 1);
    if i <= 2 * m + 1 {
        t.ker.swap(i, i + 1);
    } else if i == 2 * m + 2 {
        let b = BEval::framed(s)?.eval(s.u[2 * m + 3]);
        t.ker[i] = ProjPoint::new(b.a12, -b.a11)?;
    }
    Ok(t)
}
