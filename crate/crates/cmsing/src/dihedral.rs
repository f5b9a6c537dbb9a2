//! The dihedral group of order 2d acting on two dual planes, its invariant
//! and semi-invariant polynomials, and the recursively defined family
//! `psi_k` that appears in all quadratic relations between them.
//!
//! Group elements are 2x2 matrices over the cyclotomic field Q(zeta_d),
//! generated by the swap `[[0,1],[1,0]]` and its twist `[[0,z],[1/z,0]]`
//! under closure. An element acts on the coordinate plane (x, y) through
//! its matrix and on the dual plane (X, Y) through the inverse transpose,
//! so the pairing x*X + y*Y is preserved by construction.

use crate::matrix::Mat;
use crate::poly::{MultiPoly, VarTable};
use crate::report::{CheckResult, VerificationReport};
use crate::scalar::{cyclotomic_field, Coeff, Cyc, CycField, Rat};
use std::collections::BTreeMap;
use std::sync::Arc;

/// The four coordinates: the plane (x, y) and the dual plane (X, Y), all
/// of grading weight 1.
pub fn plane_vars() -> Arc<VarTable> {
    VarTable::unit_weights(&["x", "y", "X", "Y"])
}

pub struct DihedralGroup {
    pub d: u32,
    pub field: Arc<CycField>,
    pub elements: Vec<Mat<Cyc>>,
}

fn mat2(a: Cyc, b: Cyc, c: Cyc, dd: Cyc) -> Mat<Cyc> {
    Mat::from_rows(vec![vec![a, b], vec![c, dd]])
}

fn inv2(m: &Mat<Cyc>) -> Mat<Cyc> {
    let det = m[(0, 0)].mul(&m[(1, 1)]).sub(&m[(0, 1)].mul(&m[(1, 0)]));
    let di = det.inv();
    mat2(
        m[(1, 1)].mul(&di),
        m[(0, 1)].neg().mul(&di),
        m[(1, 0)].neg().mul(&di),
        m[(0, 0)].mul(&di),
    )
}

/// Closure of the two generating reflections; always 2d elements, d of
/// them reflections (zero diagonal).
pub fn build_group(d: u32) -> DihedralGroup {
    assert!(d >= 1);
    let field = cyclotomic_field(d);
    let one = <Cyc as Coeff>::one();
    let zero = <Cyc as Coeff>::zero();
    let z = Cyc::zeta(&field);
    let s0 = mat2(zero.clone(), one.clone(), one.clone(), zero.clone());
    let s1 = mat2(
        zero.clone(),
        z.clone(),
        Cyc::zeta_pow(&field, -1),
        zero.clone(),
    );
    let mut elements: Vec<Mat<Cyc>> = vec![mat2(one.clone(), zero.clone(), zero.clone(), one)];
    loop {
        let mut added = false;
        let current = elements.clone();
        for g in &current {
            for gen in [&s0, &s1] {
                let prod = g.mul(gen);
                if !elements.iter().any(|m| *m == prod) {
                    elements.push(prod);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    assert_eq!(elements.len(), 2 * d as usize, "dihedral group order");
    let reflections = elements
        .iter()
        .filter(|m| m[(0, 0)].is_zero() && m[(1, 1)].is_zero())
        .count();
    assert_eq!(reflections, d as usize, "reflection count");
    DihedralGroup { d, field, elements }
}

impl DihedralGroup {
    pub fn is_reflection(&self, w: &Mat<Cyc>) -> bool {
        w[(0, 0)].is_zero() && w[(1, 1)].is_zero()
    }
}

/// Image of `p` under the group element `w`. The coordinate plane
/// transforms by the matrix (x -> w11*x + w21*y), the dual plane by the
/// inverse transpose.
pub fn act(w: &Mat<Cyc>, p: &MultiPoly<Cyc>) -> MultiPoly<Cyc> {
    let vars = p.vars().clone();
    let x = MultiPoly::var(&vars, "x");
    let y = MultiPoly::var(&vars, "y");
    let xx = MultiPoly::var(&vars, "X");
    let yy = MultiPoly::var(&vars, "Y");
    let wi = inv2(w);
    // inverse transpose entries: m[i][j] = wi[j][i]
    let mut b = BTreeMap::new();
    b.insert(
        "x".to_string(),
        x.scale(&w[(0, 0)]).add(&y.scale(&w[(1, 0)])),
    );
    b.insert(
        "y".to_string(),
        x.scale(&w[(0, 1)]).add(&y.scale(&w[(1, 1)])),
    );
    b.insert(
        "X".to_string(),
        xx.scale(&wi[(0, 0)]).add(&yy.scale(&wi[(0, 1)])),
    );
    b.insert(
        "Y".to_string(),
        xx.scale(&wi[(1, 0)]).add(&yy.scale(&wi[(1, 1)])),
    );
    p.substitute(&b).expect("action substitution")
}

/// The invariant generators q, Q, e, a_0..a_d and the semi-invariants
/// delta, beta_0..beta_d, as polynomials in x, y, X, Y.
pub struct InvariantBundle<F: Coeff> {
    pub d: u32,
    pub vars: Arc<VarTable>,
    pub q: MultiPoly<F>,
    pub big_q: MultiPoly<F>,
    pub e: MultiPoly<F>,
    pub delta: MultiPoly<F>,
    /// a_i = x^(d-i) Y^i + y^(d-i) X^i, for 0 <= i <= d
    pub a: Vec<MultiPoly<F>>,
    /// beta_i = x^(d-i) Y^i - y^(d-i) X^i, for 0 <= i <= d
    pub beta: Vec<MultiPoly<F>>,
}

pub fn invariant_bundle<F: Coeff>(d: u32) -> InvariantBundle<F> {
    let vars = plane_vars();
    let term = |ex: u32, ey: u32, ebx: u32, eby: u32, c: i64| -> MultiPoly<F> {
        MultiPoly::from_terms(&vars, vec![(vec![ex, ey, ebx, eby], F::from_int(c))])
    };
    let q = term(1, 1, 0, 0, 1);
    let big_q = term(0, 0, 1, 1, 1);
    let e = term(1, 0, 1, 0, 1).add(&term(0, 1, 0, 1, 1));
    let delta = term(1, 0, 1, 0, 1).sub(&term(0, 1, 0, 1, 1));
    let mut a = Vec::with_capacity(d as usize + 1);
    let mut beta = Vec::with_capacity(d as usize + 1);
    for i in 0..=d {
        let lhs = term(d - i, 0, 0, i, 1);
        let rhs = term(0, d - i, i, 0, 1);
        a.push(lhs.add(&rhs));
        beta.push(lhs.sub(&rhs));
    }
    InvariantBundle {
        d,
        vars,
        q,
        big_q,
        e,
        delta,
        a,
        beta,
    }
}

/// Full invariance audit for one d: q, Q, e and every a_i are fixed by the
/// whole group; delta and every beta_i transform by the sign character
/// (+1 on rotations, -1 on reflections). A deliberately non-invariant
/// polynomial must be flagged by the same machinery (negative control).
pub fn verify_invariance(d: u32) -> VerificationReport {
    let mut report = VerificationReport::new(
        "invariance",
        serde_json::json!({ "d": d }),
    );
    let group = build_group(d);
    let bundle: InvariantBundle<Cyc> = invariant_bundle(d);
    let mut invariants: Vec<(String, &MultiPoly<Cyc>)> = vec![
        ("q".into(), &bundle.q),
        ("Q".into(), &bundle.big_q),
        ("e".into(), &bundle.e),
    ];
    for (i, ai) in bundle.a.iter().enumerate() {
        invariants.push((format!("a_{}", i), ai));
    }
    for (name, p) in invariants {
        let ok = group.elements.iter().all(|w| act(w, p) == *p);
        report.push(CheckResult::from_bool(
            format!("d{}/invariant/{}", d, name),
            ok,
            format!("{} fixed by all {} group elements", name, group.elements.len()),
        ));
    }
    let mut semi: Vec<(String, &MultiPoly<Cyc>)> = vec![("delta".into(), &bundle.delta)];
    for (i, bi) in bundle.beta.iter().enumerate() {
        semi.push((format!("beta_{}", i), bi));
    }
    for (name, p) in semi {
        let ok = group.elements.iter().all(|w| {
            let img = act(w, p);
            if group.is_reflection(w) {
                img == p.neg()
            } else {
                img == *p
            }
        });
        report.push(CheckResult::from_bool(
            format!("d{}/semiinvariant/{}", d, name),
            ok,
            format!("{} transforms by the sign character", name),
        ));
    }
    // negative control: x alone is not invariant and must be caught
    let x = MultiPoly::<Cyc>::var(&bundle.vars, "x");
    let caught = group.elements.iter().any(|w| act(w, &x) != x);
    report.push(CheckResult::from_bool(
        format!("d{}/negative-control/x-not-invariant", d),
        caught,
        "a non-invariant polynomial is detected as such",
    ));
    report
}

/// The ring Q[q, Q, e] carrying the psi family. All three variables get
/// weight 1 here so that psi_k is homogeneous of weight k; substitutions
/// into differently weighted rings go through `substitute`.
pub fn psi_vars() -> Arc<VarTable> {
    VarTable::unit_weights(&["q", "Q", "e"])
}

/// psi_0 = 1, psi_1 = e, psi_k = e*psi_{k-1} - qQ*psi_{k-2}.
pub fn psi_family(n: usize) -> Vec<MultiPoly<Rat>> {
    let v = psi_vars();
    let e = MultiPoly::var(&v, "e");
    let qq = MultiPoly::var(&v, "q").mul(&MultiPoly::var(&v, "Q"));
    let mut out: Vec<MultiPoly<Rat>> = Vec::with_capacity(n + 1);
    out.push(MultiPoly::one(&v));
    if n >= 1 {
        out.push(e.clone());
    }
    for k in 2..=n {
        let next = e.mul(&out[k - 1]).sub(&qq.mul(&out[k - 2]));
        out.push(next);
    }
    out
}

/// Closed form used as an independent oracle:
/// psi_k = sum_i (-1)^i C(k-i, i) e^(k-2i) (qQ)^i.
fn psi_closed_form(k: usize) -> MultiPoly<Rat> {
    let v = psi_vars();
    let mut terms = Vec::new();
    let mut i = 0usize;
    while 2 * i <= k {
        let c = binomial(k - i, i);
        let sign = if i % 2 == 0 { 1 } else { -1 };
        terms.push((
            vec![i as u32, i as u32, (k - 2 * i) as u32],
            crate::scalar::rat(sign * c),
        ));
        i += 1;
    }
    MultiPoly::from_terms(&v, terms)
}

fn binomial(n: usize, k: usize) -> i64 {
    let mut r: i64 = 1;
    for j in 0..k {
        r = r * (n - j) as i64 / (j + 1) as i64;
    }
    r
}

/// Verification of the psi family up to index `n`: closed form, the three
/// boundary specializations, homogeneity, and the generating-series
/// identity (sum psi_k t^k)(1 - e t + qQ t^2) = 1 truncated at t^n.
pub fn verify_psi(n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("psi", serde_json::json!({ "n": n }));
    let v = psi_vars();
    let psis = psi_family(n);
    let closed_ok = (0..=n).all(|k| psis[k] == psi_closed_form(k));
    report.push(CheckResult::from_bool(
        "psi/closed-form",
        closed_ok,
        format!("recurrence matches the binomial closed form for k <= {}", n),
    ));
    report.push(CheckResult::from_bool(
        "psi/homogeneous",
        psis.iter()
            .enumerate()
            .all(|(k, p)| p.is_homogeneous() && p.weighted_degree() == Some(k as u64)),
        "psi_k is homogeneous of weight k",
    ));
    // specializations: q -> 0 (or Q -> 0) give e^k; e -> 0 alternates
    let zero = MultiPoly::<Rat>::zero(&v);
    let sub_to = |p: &MultiPoly<Rat>, which: &str| -> MultiPoly<Rat> {
        let mut b = BTreeMap::new();
        b.insert(which.to_string(), zero.clone());
        p.substitute_partial(&b).unwrap()
    };
    let e = MultiPoly::<Rat>::var(&v, "e");
    let spec_ok = (0..=n).all(|k| {
        sub_to(&psis[k], "q") == e.pow(k as u32) && sub_to(&psis[k], "Q") == e.pow(k as u32)
    });
    report.push(CheckResult::from_bool(
        "psi/specialize-qQ",
        spec_ok,
        "psi_k(q,0,e) = psi_k(0,Q,e) = e^k",
    ));
    let mqq = MultiPoly::<Rat>::var(&v, "q")
        .mul(&MultiPoly::var(&v, "Q"))
        .neg();
    let spec_e_ok = (0..=n).all(|k| {
        let s = sub_to(&psis[k], "e");
        if k % 2 == 1 {
            s.is_zero()
        } else {
            s == mqq.pow((k / 2) as u32)
        }
    });
    report.push(CheckResult::from_bool(
        "psi/specialize-e",
        spec_e_ok,
        "psi_k(q,Q,0) vanishes for odd k and equals (-qQ)^(k/2) for even k",
    ));
    // generating series over Q[q,Q,e][t] truncated at t^n: model t as a
    // fourth variable and cut exponents beyond n
    let vt = VarTable::unit_weights(&["q", "Q", "e", "t"]);
    let lift = |p: &MultiPoly<Rat>| -> MultiPoly<Rat> {
        MultiPoly::from_terms(
            &vt,
            p.terms()
                .map(|(ex, c)| (vec![ex[0], ex[1], ex[2], 0], c.clone()))
                .collect(),
        )
    };
    let t = MultiPoly::<Rat>::var(&vt, "t");
    let mut series = MultiPoly::<Rat>::zero(&vt);
    for (k, p) in psis.iter().enumerate() {
        series = series.add(&lift(p).mul(&t.pow(k as u32)));
    }
    let q4 = MultiPoly::<Rat>::var(&vt, "q");
    let qq4 = MultiPoly::<Rat>::var(&vt, "Q");
    let e4 = MultiPoly::<Rat>::var(&vt, "e");
    let denom = MultiPoly::one(&vt)
        .sub(&e4.mul(&t))
        .add(&q4.mul(&qq4).mul(&t.pow(2)));
    let prod = series.mul(&denom);
    // truncate in the t-exponent at n
    let ti = vt.index("t").unwrap();
    let trunc = MultiPoly::from_terms(
        &vt,
        prod.terms()
            .filter(|(ex, _)| ex[ti] <= n as u32)
            .map(|(ex, c)| (ex.clone(), c.clone()))
            .collect(),
    );
    report.push(CheckResult::from_bool(
        "psi/generating-series",
        trunc.is_one(),
        "(sum_k psi_k t^k)(1 - e t + qQ t^2) = 1 mod t^(n+1)",
    ));
    // negative control: perturbing one coefficient must break the series
    if n >= 2 {
        let bad = series.add(&t.pow(2));
        let bad_prod = bad.mul(&denom);
        let bad_trunc = MultiPoly::from_terms(
            &vt,
            bad_prod
                .terms()
                .filter(|(ex, _)| ex[ti] <= n as u32)
                .map(|(ex, c)| (ex.clone(), c.clone()))
                .collect(),
        );
        report.push(CheckResult::from_bool(
            "psi/negative-control",
            !bad_trunc.is_one(),
            "a perturbed psi family fails the generating-series identity",
        ));
    }
    report
}

/// psi_k expressed inside an arbitrary ring that has variables named q, Q
/// and e (used by the relation builders).
pub fn psi_in<F: Coeff>(k: usize, target: &Arc<VarTable>) -> MultiPoly<F> {
    let p = &psi_family(k)[k];
    let mut b: BTreeMap<String, MultiPoly<F>> = BTreeMap::new();
    for name in ["q", "Q", "e"] {
        b.insert(name.to_string(), MultiPoly::var(target, name));
    }
    // re-coefficient the rational polynomial into F
    let lifted: MultiPoly<F> = MultiPoly::from_terms(
        p.vars(),
        p.terms()
            .map(|(e, c)| (e.clone(), F::from_rat(c)))
            .collect(),
    );
    lifted.substitute(&b).expect("psi substitution")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn group_structure() {
        for d in [1u32, 2, 3, 4, 5, 6] {
            let g = build_group(d);
            assert_eq!(g.elements.len(), 2 * d as usize);
            assert_eq!(
                g.elements.iter().filter(|w| g.is_reflection(w)).count(),
                d as usize
            );
        }
    }

    #[test]
    fn action_conventions() {
        // rotation ts = diag(zeta, 1/zeta) sends x to zeta*x; the swap
        // reflection sends delta to -delta.
        let d = 5;
        let g = build_group(d);
        let vars = plane_vars();
        let z = Cyc::zeta(&g.field);
        let ts = super::mat2(
            z.clone(),
            <Cyc as Coeff>::zero(),
            <Cyc as Coeff>::zero(),
            Cyc::zeta_pow(&g.field, -1),
        );
        let x = MultiPoly::<Cyc>::var(&vars, "x");
        assert_eq!(act(&ts, &x), x.scale(&z));
        let bundle: InvariantBundle<Cyc> = invariant_bundle(d);
        let s = super::mat2(
            <Cyc as Coeff>::zero(),
            <Cyc as Coeff>::one(),
            <Cyc as Coeff>::one(),
            <Cyc as Coeff>::zero(),
        );
        assert_eq!(act(&s, &bundle.delta), bundle.delta.neg());
        // the pairing e is preserved by every element
        for w in &g.elements {
            assert_eq!(act(w, &bundle.e), bundle.e);
        }
    }

    #[test]
    fn invariance_small_d() {
        for d in [3u32, 4] {
            let r = verify_invariance(d);
            assert!(r.all_passed(), "invariance failed for d={}", d);
        }
    }

    #[test]
    fn delta_squared_identity() {
        // delta^2 = e^2 - 4 q Q, the discriminant identity behind all the
        // quadratic relations.
        let b: InvariantBundle<Rat> = invariant_bundle(6);
        let lhs = b.delta.mul(&b.delta);
        let rhs = b
            .e
            .mul(&b.e)
            .sub(&b.q.mul(&b.big_q).scale(&rat(4)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_oracles() {
        let r = verify_psi(12);
        assert!(r.all_passed());
        // spot values: psi_2 = e^2 - qQ, psi_3 = e^3 - 2qQe
        let v = psi_vars();
        let psis = psi_family(3);
        let e = MultiPoly::<Rat>::var(&v, "e");
        let qq = MultiPoly::<Rat>::var(&v, "q").mul(&MultiPoly::var(&v, "Q"));
        assert_eq!(psis[2], e.pow(2).sub(&qq));
        assert_eq!(psis[3], e.pow(3).sub(&qq.mul(&e).scale(&rat(2))));
    }
}
