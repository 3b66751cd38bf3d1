//! Thin FFI layer over the system LAPACK (provided by OpenBLAS).
//!
//! Only the routines actually used by the eigensolvers are declared:
//! `dsyevd` for dense symmetric problems, `dstebz`/`dstein` for
//! bisection and inverse iteration on symmetric tridiagonal matrices.

use std::os::raw::c_char;

extern "C" {
    fn dsyevd_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut f64,
        lda: *const i32,
        w: *mut f64,
        work: *mut f64,
        lwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );

    fn dstebz_(
        range: *const c_char,
        order: *const c_char,
        n: *const i32,
        vl: *const f64,
        vu: *const f64,
        il: *const i32,
        iu: *const i32,
        abstol: *const f64,
        d: *const f64,
        e: *const f64,
        m: *mut i32,
        nsplit: *mut i32,
        w: *mut f64,
        iblock: *mut i32,
        isplit: *mut i32,
        work: *mut f64,
        iwork: *mut i32,
        info: *mut i32,
    );

    fn dstein_(
        n: *const i32,
        d: *const f64,
        e: *const f64,
        m: *const i32,
        w: *const f64,
        iblock: *const i32,
        isplit: *const i32,
        z: *mut f64,
        ldz: *const i32,
        work: *mut f64,
        iwork: *mut i32,
        ifail: *mut i32,
        info: *mut i32,
    );
}

/// Full eigendecomposition of a symmetric matrix stored column-major in `a`
/// (dimension `n`). On success `a` holds the eigenvectors (columns) and the
/// returned vector holds the eigenvalues in ascending order.
pub fn dsyevd(a: &mut [f64], n: usize) -> Result<Vec<f64>, i32> {
    assert_eq!(a.len(), n * n);
    let ni = n as i32;
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;
    // workspace query
    let mut wkopt = 0.0f64;
    let mut iwkopt = 0i32;
    let m1 = -1i32;
    unsafe {
        dsyevd_(
            &(b'V' as c_char),
            &(b'L' as c_char),
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            &mut wkopt,
            &m1,
            &mut iwkopt,
            &m1,
            &mut info,
        );
    }
    if info != 0 {
        return Err(info);
    }
    let lwork = wkopt as i32;
    let liwork = iwkopt;
    let mut work = vec![0.0f64; lwork as usize];
    let mut iwork = vec![0i32; liwork as usize];
    unsafe {
        dsyevd_(
            &(b'V' as c_char),
            &(b'L' as c_char),
            &ni,
            a.as_mut_ptr(),
            &ni,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            iwork.as_mut_ptr(),
            &liwork,
            &mut info,
        );
    }
    if info != 0 {
        return Err(info);
    }
    Ok(w)
}

/// Eigenvalues `il..=iu` (1-based, ascending order) of a symmetric
/// tridiagonal matrix, by bisection. Returns `(w, iblock, isplit)` as
/// needed by [`dstein`].
pub fn dstebz(
    diag: &[f64],
    sub: &[f64],
    il: usize,
    iu: usize,
) -> Result<(Vec<f64>, Vec<i32>, Vec<i32>), i32> {
    let n = diag.len();
    assert_eq!(sub.len(), n.saturating_sub(1));
    let ni = n as i32;
    let ili = il as i32;
    let iui = iu as i32;
    let zero = 0.0f64;
    let abstol = 0.0f64; // default tolerance
    let mut m = 0i32;
    let mut nsplit = 0i32;
    let mut w = vec![0.0f64; n];
    let mut iblock = vec![0i32; n];
    let mut isplit = vec![0i32; n];
    let mut work = vec![0.0f64; 4 * n];
    let mut iwork = vec![0i32; 3 * n];
    let mut info = 0i32;
    unsafe {
        dstebz_(
            &(b'I' as c_char),
            &(b'B' as c_char),
            &ni,
            &zero,
            &zero,
            &ili,
            &iui,
            &abstol,
            diag.as_ptr(),
            sub.as_ptr(),
            &mut m,
            &mut nsplit,
            w.as_mut_ptr(),
            iblock.as_mut_ptr(),
            isplit.as_mut_ptr(),
            work.as_mut_ptr(),
            iwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(info);
    }
    w.truncate(m as usize);
    iblock.truncate(m as usize);
    Ok((w, iblock, isplit))
}

/// Inverse-iteration eigenvectors for the tridiagonal eigenvalues produced
/// by [`dstebz`]. Returns the vectors as `m` concatenated columns of
/// length `n`.
pub fn dstein(
    diag: &[f64],
    sub: &[f64],
    w: &[f64],
    iblock: &[i32],
    isplit: &[i32],
) -> Result<Vec<f64>, i32> {
    let n = diag.len();
    let m = w.len();
    let ni = n as i32;
    let mi = m as i32;
    let mut z = vec![0.0f64; n * m];
    let mut work = vec![0.0f64; 5 * n];
    let mut iwork = vec![0i32; n];
    let mut ifail = vec![0i32; m];
    let mut info = 0i32;
    unsafe {
        dstein_(
            &ni,
            diag.as_ptr(),
            sub.as_ptr(),
            &mi,
            w.as_ptr(),
            iblock.as_ptr(),
            isplit.as_ptr(),
            z.as_mut_ptr(),
            &ni,
            work.as_mut_ptr(),
            iwork.as_mut_ptr(),
            ifail.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(info);
    }
    Ok(z)
}
