use proptest::prelude::*;

use spineq::darboux::{self, DarbouxParams};
use spineq::dynamics::{propagate, propagate_at, Trajectory};
use spineq::field::FnField;
use spineq::reduction::{self, Angle, ReductionPlan};
use spineq::solutions;
use spineq::spinor::{anticonjugate, from_angles, inner, l_vector, sigma_apply, to_angles};
use spineq::{CVec3, Mat2, Spinor, C64};

fn c64() -> impl Strategy<Value = C64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(a, b)| C64::new(a, b))
}

fn spinor() -> impl Strategy<Value = Spinor> {
    (c64(), c64())
        .prop_filter("nonzero", |(a, b)| a.norm() + b.norm() > 1e-3)
        .prop_map(|(a, b)| Spinor::new(a, b))
}

fn cvec() -> impl Strategy<Value = CVec3> {
    (c64(), c64(), c64()).prop_map(|(a, b, c)| CVec3::new(a, b, c))
}

fn real_field() -> impl Strategy<Value = [f64; 6]> {
    prop::array::uniform6(-1.0..1.0f64)
}

fn field_of(k: [f64; 6]) -> FnField<impl Fn(f64) -> spineq::Result<CVec3> + Send + Sync> {
    FnField(move |t: f64| Ok(CVec3::from_real([k[0] + k[1] * t.cos(), k[2] * t, k[3] + k[4] * (k[5] * t).sin()])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn anticonjugate_is_orthogonal_and_isometric(v in spinor()) {
        let vb = anticonjugate(&v);
        prop_assert!(inner(&v, &vb).norm() <= 1e-13 * v.norm_sqr());
        prop_assert!((vb.norm_sqr() - v.norm_sqr()).abs() <= 1e-13 * v.norm_sqr());
        prop_assert!((anticonjugate(&vb) + v).norm() <= 1e-14 * v.norm());
    }

    #[test]
    fn l_vector_of_v_has_square_norm_squared(v in spinor()) {
        let n2 = v.norm_sqr() * v.norm_sqr();
        prop_assert!((l_vector(&v, &v).square() - n2).norm() <= 1e-12 * n2);
    }

    #[test]
    fn sigma_dot_squares_to_field_square(f in cvec()) {
        let m = Mat2::sigma_dot(&f);
        let sq = m * m - Mat2::scalar(f.square());
        prop_assert!(sq.norm() <= 1e-12 * (1.0 + f.norm() * f.norm()));
    }

    #[test]
    fn angles_round_trip(v in spinor()) {
        let back = from_angles(&to_angles(&v).unwrap());
        prop_assert!((back - v).norm() <= 1e-13 * v.norm().max(1.0));
    }

    #[test]
    fn propagation_is_linear(k in real_field(), a in spinor(), b in spinor(), s in c64()) {
        let f = field_of(k);
        let w = (0.0, 1.5);
        let ta = propagate(&f, a, w, 1e-12).unwrap();
        let tb = propagate(&f, b, w, 1e-12).unwrap();
        let tc = propagate(&f, a + b * s, w, 1e-12).unwrap();
        let scale = 1.0 + a.norm() + s.norm() * b.norm();
        for k in 0..tc.len() {
            prop_assert!((tc.states[k] - ta.states[k] - tb.states[k] * s).norm() <= 1e-8 * scale);
        }
    }

    #[test]
    fn real_fields_conserve_norm(k in real_field(), v in spinor()) {
        let tr = propagate(&field_of(k), v, (0.0, 2.0), 1e-12).unwrap();
        for s in &tr.states {
            prop_assert!((s.norm_sqr() - v.norm_sqr()).abs() <= 1e-9 * v.norm_sqr());
        }
    }

    /// The free coefficient of the recovered field does not affect the
    /// equation, since the extra term annihilates `V`.
    #[test]
    fn recovered_field_is_gauge_invariant(v in spinor(), vdot in spinor(), g1 in c64(), g2 in c64()) {
        let f1 = solutions::recover_field(&v, &vdot, g1).unwrap();
        let f2 = solutions::recover_field(&v, &vdot, g2).unwrap();
        let want = vdot * C64::new(0.0, 1.0);
        let scale = vdot.norm() + 1.0;
        prop_assert!((sigma_apply(&f1, &v) - want).norm() <= 1e-11 * scale * (1.0 + g1.norm()) * v.norm_sqr().max(1.0));
        prop_assert!((sigma_apply(&f2, &v) - sigma_apply(&f1, &v)).norm() <= 1e-11 * scale * (1.0 + g1.norm() + g2.norm()) * v.norm_sqr().max(1.0));
    }

    #[test]
    fn reduction_inverse_undoes_field_map(f in cvec(), rate in -2.0..2.0f64, t in 0.0..3.0f64) {
        let plan = ReductionPlan::new(
            CVec3::from_real([0.3, -0.4, 0.8]),
            Angle::Linear { rate: C64::new(rate, 0.0), offset: C64::new(0.1, 0.0) },
        ).unwrap();
        let there = reduction::reduce_value(&f, &plan, t).unwrap();
        let back = reduction::reduce_value(&there, &plan.inverse(), t).unwrap();
        prop_assert!((back - f).norm() <= 1e-11 * (1.0 + f.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The Darboux map is linear in the spinor it acts on.
    #[test]
    fn darboux_map_is_linear(p in c64(), q in c64(), s in -1.0..1.0f64) {
        let (f, r, phi0, eps) = (C64::new(0.5, 0.0), C64::new(1.0, 0.0), C64::new(0.1, 0.0), C64::new(0.8, 0.0));
        let ts: Vec<f64> = (0..101).map(|k| 2.0 * k as f64 / 100.0).collect();
        let params = DarbouxParams::constant_f(f, r, phi0, &ts).unwrap();
        let base = CVec3::new(eps, C64::new(0.0, 0.0), f);
        let path = |p: C64, q: C64| {
            Trajectory::from_fn(&ts, |t| Ok(darboux::constant_f_solution(f, eps, p, q, t)), Some(&base)).unwrap()
        };
        let one = C64::new(1.0, 0.0);
        let a = darboux::darboux_apply(&path(p, q), eps, &params).unwrap();
        let b = darboux::darboux_apply(&path(one, one * s), eps, &params).unwrap();
        let sum = darboux::darboux_apply(&path(p + one, q + one * s), eps, &params).unwrap();
        for k in 0..ts.len() {
            let d = sum.states[k] - a.states[k] - b.states[k];
            prop_assert!(d.norm() <= 1e-10 * (1.0 + sum.states[k].norm()));
        }
    }

    /// A propagated path, inverted under the true gauge, returns the field.
    #[test]
    fn inversion_round_trip(k in real_field(), v in spinor()) {
        let f = field_of(k);
        let ts: Vec<f64> = (0..801).map(|j| j as f64 / 800.0).collect();
        let tr = propagate_at(&f, v, 0.0, &ts, 1e-13).unwrap();
        let rec = solutions::invert_field_selfadjoint(&tr).unwrap();
        for (t, g) in ts.iter().zip(&rec.fields) {
            prop_assert!((*g - spineq::Field::eval(&f, *t).unwrap()).norm() <= 1e-6);
        }
    }
}
