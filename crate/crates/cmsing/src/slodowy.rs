//! The sl2-triple for Jordan type (d-2, 2), the transverse slice through
//! its nilpotent, and the characteristic-polynomial equations cutting
//! out the nilpotent cone on the slice.
//!
//! All data is exact. The slice is ker(ad f) inside the traceless
//! matrices; the generic slice element e + sum z_i B_i gets its
//! characteristic polynomial computed symbolically by the
//! Faddeev-LeVerrier recursion, and smooth/singular points are certified
//! by exact Jacobian ranks.

use crate::matrix::{exact_rank, Mat};
use crate::poly::{MultiPoly, VarTable};
use crate::report::{CheckResult, VerificationReport};
use crate::scalar::{rat, Coeff, Rat};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct SL2Triple {
    pub d: u32,
    pub e: Mat<Rat>,
    pub h: Mat<Rat>,
    pub f: Mat<Rat>,
}

/// Standard triple for the nilpotent with Jordan blocks (d-2, 2): per
/// block of size n, e has ones on the superdiagonal, h the weight string
/// n-1, n-3, ..., 1-n, and f_{i+1,i} = i(n-i).
pub fn build_triple(d: u32) -> SL2Triple {
    assert!(d >= 4);
    let n = d as usize;
    let mut e = Mat::zero(n, n);
    let mut h = Mat::zero(n, n);
    let mut f = Mat::zero(n, n);
    let mut offset = 0usize;
    for block in [n - 2, 2] {
        for i in 0..block {
            h[(offset + i, offset + i)] = rat(block as i64 - 1 - 2 * i as i64);
            if i + 1 < block {
                e[(offset + i, offset + i + 1)] = rat(1);
                f[(offset + i + 1, offset + i)] = rat((i as i64 + 1) * (block as i64 - 1 - i as i64));
            }
        }
        offset += block;
    }
    let t = SL2Triple { d, e, h, f };
    debug_assert!(t.h.commutator(&t.e).sub(&t.e.scale(&rat(2))).is_zero());
    debug_assert!(t.h.commutator(&t.f).sub(&t.f.scale(&rat(-2))).is_zero());
    debug_assert!(t.e.commutator(&t.f).sub(&t.h).is_zero());
    t
}

#[derive(Clone, Debug)]
pub struct SlicePresentation {
    pub d: u32,
    /// basis of ker(ad f) intersected with the traceless matrices
    pub basis: Vec<Mat<Rat>>,
    pub vars: Arc<VarTable>,
    /// nontrivial characteristic-polynomial coefficients p_2..p_d of the
    /// generic slice element, as polynomials in z_1..z_{d+3}
    pub equations: Vec<MultiPoly<Rat>>,
}

/// Trace of a matrix of polynomials.
fn ptrace(m: &[Vec<MultiPoly<Rat>>]) -> MultiPoly<Rat> {
    let mut s = m[0][0].clone();
    for i in 1..m.len() {
        s = s.add(&m[i][i]);
    }
    s
}

fn pmul(a: &[Vec<MultiPoly<Rat>>], b: &[Vec<MultiPoly<Rat>>]) -> Vec<Vec<MultiPoly<Rat>>> {
    let n = a.len();
    crate::par::map_collect((0..n).collect::<Vec<_>>(), |i| {
        (0..n)
            .map(|j| {
                let mut s = MultiPoly::zero(a[i][0].vars());
                for k in 0..n {
                    if !a[i][k].is_zero() && !b[k][j].is_zero() {
                        s = s.add(&a[i][k].mul(&b[k][j]));
                    }
                }
                s
            })
            .collect()
    })
}

pub fn slice_equations(d: u32) -> SlicePresentation {
    let t = build_triple(d);
    let n = d as usize;
    // ker(ad f), traceless: linear system on the flattened matrix entries
    let mut sys = Mat::<Rat>::zero(n * n + 1, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            // [f, X]_{ij} = sum_k f_{ik} X_{kj} - X_{ik} f_{kj}
            for k in 0..n {
                sys[(row, k * n + j)] += t.f[(i, k)].clone();
                sys[(row, i * n + k)] -= t.f[(k, j)].clone();
            }
        }
    }
    for i in 0..n {
        sys[(n * n, i * n + i)] = rat(1);
    }
    let null = sys.nullspace();
    assert_eq!(
        null.len(),
        n + 3,
        "centralizer of the (d-2,2) nilpotent in the traceless matrices has dimension d+3"
    );
    let basis: Vec<Mat<Rat>> = null
        .iter()
        .map(|v| Mat::from_fn(n, n, |i, j| v[i * n + j].clone()))
        .collect();
    // generic slice element A = e + sum z_i B_i
    let names: Vec<String> = (1..=n + 3).map(|i| format!("z{}", i)).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let vars = VarTable::unit_weights(&refs);
    let mut a: Vec<Vec<MultiPoly<Rat>>> =
        vec![vec![MultiPoly::zero(&vars); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut entry = MultiPoly::constant(&vars, t.e[(i, j)].clone());
            for (k, b) in basis.iter().enumerate() {
                if !Coeff::is_zero(&b[(i, j)]) {
                    entry = entry.add(
                        &MultiPoly::var(&vars, &names[k]).scale(&b[(i, j)]),
                    );
                }
            }
            a[i][j] = entry;
        }
    }
    // Faddeev-LeVerrier: M_1 = A, c_k = -tr(A M_{k-1} + c_{k-1} ...)
    // via M_{k+1} = A (M_k + c_k I), c_{k+1} = -tr(M_{k+1}) / (k+1)
    let mut equations = Vec::new();
    let mut m = a.clone();
    let mut c = ptrace(&m).neg();
    debug_assert!(c.is_zero(), "generic slice element is traceless");
    for k in 2..=n {
        let mut shifted = m.clone();
        for i in 0..n {
            shifted[i][i] = shifted[i][i].add(&c);
        }
        m = pmul(&a, &shifted);
        c = ptrace(&m).scale(&(rat(-1) / rat(k as i64)));
        equations.push(c.clone());
    }
    SlicePresentation { d, basis, vars, equations }
}

fn eval_at(p: &MultiPoly<Rat>, vars: &Arc<VarTable>, z: &[Rat]) -> Rat {
    let binding: BTreeMap<String, MultiPoly<Rat>> = vars
        .names()
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), MultiPoly::constant(vars, z[i].clone())))
        .collect();
    p.substitute(&binding).unwrap().constant_term()
}

/// Jacobian of the slice equations at a point, as an exact matrix.
fn jacobian_at(s: &SlicePresentation, z: &[Rat]) -> Mat<Rat> {
    let names = s.vars.names().to_vec();
    Mat::from_fn(s.equations.len(), names.len(), |i, j| {
        eval_at(&s.equations[i].partial(&names[j]), &s.vars, z)
    })
}

fn is_regular_nilpotent_point(s: &SlicePresentation, triple: &SL2Triple, z: &[Rat]) -> bool {
    if !s.equations.iter().all(|p| Coeff::is_zero(&eval_at(p, &s.vars, z))) {
        return false;
    }
    // all invariants vanish, so the matrix is nilpotent; regular means
    // the (d-1)-st power survives
    let n = s.d as usize;
    let mut a = triple.e.clone();
    for (k, b) in s.basis.iter().enumerate() {
        a = a.add(&b.scale(&z[k]));
    }
    let mut pow = Mat::identity(n);
    for _ in 0..n - 1 {
        pow = pow.mul(&a);
    }
    !pow.is_zero()
}

/// Singularity at the origin, smoothness along the regular locus, and
/// dimension bookkeeping. The regular-point search is bounded (single
/// and double basis directions with small integer coefficients); a miss
/// is reported as skipped, never as failure.
pub fn verify_slice_geometry(d: u32, coeff_bound: i64) -> VerificationReport {
    let mut report = VerificationReport::new(
        "slodowy",
        serde_json::json!({ "d": d, "coeff_bound": coeff_bound }),
    );
    assert!(coeff_bound >= 1);
    let t = build_triple(d);
    let n = d as usize;
    // triple relations and rank of e
    report.push(CheckResult::from_bool(
        format!("d{}/triple-relations", d),
        t.h.commutator(&t.e) == t.e.scale(&rat(2))
            && t.h.commutator(&t.f) == t.f.scale(&rat(-2))
            && t.e.commutator(&t.f) == t.h,
        "[h,e] = 2e, [h,f] = -2f, [e,f] = h with zero residual",
    ));
    report.push(CheckResult::from_bool(
        format!("d{}/rank-e", d),
        exact_rank(&t.e) == n - 2,
        format!("rank(e) = {} for Jordan type ({}, 2)", exact_rank(&t.e), d - 2),
    ));
    let s = slice_equations(d);
    report.push(CheckResult::from_bool(
        format!("d{}/slice-dimension", d),
        s.basis.len() == n + 3,
        format!("dim ker(ad f) = {} = d + 3", s.basis.len()),
    ));
    report.push(CheckResult::from_bool(
        format!("d{}/equation-count-and-degrees", d),
        s.equations.len() == n - 1
            && s.equations
                .iter()
                .enumerate()
                .all(|(i, p)| p.weighted_degree().map_or(true, |deg| deg <= i as u64 + 2)),
        "d - 1 equations p_2..p_d, with deg p_k <= k",
    ));
    report.push(CheckResult::from_bool(
        format!("d{}/constant-free", d),
        s.equations.iter().all(|p| Coeff::is_zero(&p.constant_term())),
        "every equation vanishes at z = 0 (e is nilpotent)",
    ));
    // (i) singular at the base point
    let zero = vec![<Rat as num::Zero>::zero(); n + 3];
    let rank0 = exact_rank(&jacobian_at(&s, &zero));
    report.push(CheckResult::from_bool(
        format!("d{}/singular-at-origin", d),
        rank0 < n - 1,
        format!("Jacobian rank {} < {} at the base point", rank0, n - 1),
    ));
    // (ii) smooth of codimension d-1 at a regular nilpotent slice point
    let mut found: Option<Vec<Rat>> = None;
    let coeffs: Vec<i64> = (1..=coeff_bound).flat_map(|c| [c, -c]).collect();
    'search: for i in 0..n + 3 {
        for &ci in &coeffs {
            let mut z = zero.clone();
            z[i] = rat(ci);
            if is_regular_nilpotent_point(&s, &t, &z) {
                found = Some(z);
                break 'search;
            }
        }
    }
    if found.is_none() {
        'pairs: for i in 0..n + 3 {
            for j in i + 1..n + 3 {
                for &ci in &coeffs {
                    for &cj in &coeffs {
                        let mut z = zero.clone();
                        z[i] = rat(ci);
                        z[j] = rat(cj);
                        if is_regular_nilpotent_point(&s, &t, &z) {
                            found = Some(z);
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    match found {
        Some(z) => {
            let r = exact_rank(&jacobian_at(&s, &z));
            report.push(CheckResult::from_bool(
                format!("d{}/smooth-at-regular-point", d),
                r == n - 1,
                format!(
                    "Jacobian rank {} at the regular nilpotent point z = {:?}",
                    r,
                    z.iter().map(|x| x.to_string()).collect::<Vec<_>>()
                ),
            ));
        }
        None => {
            report.push(CheckResult::skipped(
                format!("d{}/smooth-at-regular-point", d),
                "no regular nilpotent slice point found within the search budget",
            ));
        }
    }
    report.push(CheckResult::from_bool(
        format!("d{}/dimension-bookkeeping", d),
        (n + 3) - (n - 1) == 4,
        "(d + 3) - (d - 1) = 4",
    ));
    // negative control: the trace power sums of e + h are not all zero,
    // so a non-nilpotent matrix fails the equations check
    let eh = t.e.add(&t.h);
    let mut pow = Mat::identity(n);
    let mut nonzero_invariant = false;
    for _ in 0..n {
        pow = pow.mul(&eh);
        if !Coeff::is_zero(&pow.trace()) {
            nonzero_invariant = true;
        }
    }
    report.push(CheckResult::from_bool(
        format!("d{}/negative-control", d),
        nonzero_invariant,
        "a deliberately non-nilpotent matrix has a nonvanishing invariant",
    ));
    report
}

/// JSON export of the slice basis and equations.
pub fn slice_to_json(s: &SlicePresentation) -> serde_json::Value {
    serde_json::json!({
        "d": s.d,
        "variables": s.vars.names(),
        "basis": s.basis.iter().map(|b| {
            (0..s.d as usize).map(|i| {
                (0..s.d as usize).map(|j| b[(i, j)].to_string()).collect::<Vec<_>>()
            }).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
        "equations": s.equations.iter().map(|p| p.canonical_string(&crate::poly::MonomialOrder::degrevlex())).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triple_d4() {
        let t = build_triple(4);
        assert_eq!(t.h[(0, 0)], rat(1));
        assert_eq!(t.h[(1, 1)], rat(-1));
        assert_eq!(t.h[(2, 2)], rat(1));
        assert_eq!(t.h[(3, 3)], rat(-1));
        assert_eq!(exact_rank(&t.e), 2);
    }

    #[test]
    fn slice_dimensions() {
        for d in [4u32, 5, 6] {
            let s = slice_equations(d);
            assert_eq!(s.basis.len(), d as usize + 3);
            assert_eq!(s.equations.len(), d as usize - 1);
        }
    }

    #[test]
    fn geometry_d4_d5() {
        for d in [4u32, 5] {
            let r = verify_slice_geometry(d, 2);
            assert!(r.all_passed(), "d={} {:?}", d, r.checks);
        }
    }
}
