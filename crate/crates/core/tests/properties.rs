mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::*;
use framescale::analysis::{frame_bounds, normalize_scaling, scaled_bounds};
use framescale::closed_form::{
    best_pair_scaling, optimal_inline_component, pair_cosine, two_vector_condition, two_vector_config,
    two_vector_eigen,
};
use framescale::linalg::{sym2_eigen, Frame, Scaling, SymMatrix2, Vec2};
use framescale::oracle::{grid_search_scaling, refine_scaling, Interval, SearchSpec};
use framescale::restricted::{restricted_pair, restricted_scaling, Budget};
use framescale::scalability::{classify_scalability, min_covering_arc, directions_mod_pi};
use proptest::prelude::*;

fn angle() -> impl Strategy<Value = f64> {
    0.0..2.0 * PI
}

fn frame_strategy(m: std::ops::Range<usize>) -> impl Strategy<Value = Frame> {
    prop::collection::vec((0.05f64..3.0, angle()), m)
        .prop_map(|v| Frame::new(v.into_iter().map(|(r, t)| polar(r, t)).collect()).unwrap())
}

/// Directions inside an arc of width `< π/2`, first two on the endpoints.
fn quadrant_strategy(m: std::ops::Range<usize>) -> impl Strategy<Value = Frame> {
    (0.0..PI, 0.2..FRAC_PI_2 - 0.05, prop::collection::vec((0.3f64..2.0, 0.02f64..0.98, any::<bool>()), m))
        .prop_map(|(start, spread, vs)| {
            let vectors = vs
                .iter()
                .enumerate()
                .map(|(i, &(r, s, flip))| {
                    let t = match i {
                        0 => start,
                        1 => start + spread,
                        _ => start + s * spread,
                    };
                    polar(if flip { -r } else { r }, t)
                })
                .collect();
            Frame::new(vectors).unwrap()
        })
}

fn cond(frame: &Frame) -> f64 {
    frame_bounds(frame.vectors()).unwrap().cond
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn eigen_trace_det_residual(a in -1e3f64..1e3, b in -1e3f64..1e3, c in -1e3f64..1e3) {
        let m = SymMatrix2::new(a, c, b);
        let e = sym2_eigen(&m).unwrap();
        let trace = a + b;
        let det = a * b - c * c;
        prop_assert!((e.lambda_max + e.lambda_min - trace).abs() <= 1e-10 * trace.abs().max(1.0).max(e.lambda_max.abs()));
        prop_assert!((e.lambda_max * e.lambda_min - det).abs() <= 1e-9 * det.abs().max(1.0).max(e.lambda_max * e.lambda_max * 1e-3));
        for (lambda, v) in [(e.lambda_max, e.v_max), (e.lambda_min, e.v_min)] {
            let r = m.apply(v) - v * lambda;
            prop_assert!(r.norm() <= 1e-9 * e.lambda_max.abs().max(1.0));
            prop_assert!((v.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn cond_is_rotation_and_scale_invariant(f in frame_strategy(2..7), theta in angle(), t in 0.01f64..100.0) {
        let c = cond(&f);
        prop_assume!(c < 1e6);
        let rotated = f.rotated(theta);
        let scaled = Frame::new(f.vectors().iter().map(|&v| v * t).collect()).unwrap();
        prop_assert!((cond(&rotated) - c).abs() <= 1e-10 * c);
        prop_assert!((cond(&scaled) - c).abs() <= 1e-10 * c);
        let (hi, lo) = eig2(
            rotated.vectors().iter().map(|v| v.x * v.x).sum(),
            rotated.vectors().iter().map(|v| v.x * v.y).sum(),
            rotated.vectors().iter().map(|v| v.y * v.y).sum(),
        );
        let b = frame_bounds(f.vectors()).unwrap();
        prop_assert!((hi - b.upper).abs() <= 1e-10 * b.upper.max(1.0));
        prop_assert!((lo - b.lower).abs() <= 1e-10 * b.upper.max(1.0));
    }

    #[test]
    fn normalize_centres_bounds(f in frame_strategy(2..6), w in prop::collection::vec(0.1f64..3.0, 6)) {
        let s = Scaling::new(w[..f.len()].to_vec()).unwrap();
        let before = scaled_bounds(&f, &s).unwrap();
        prop_assume!(before.cond < 1e6);
        let n = normalize_scaling(&f, &s).unwrap();
        let after = scaled_bounds(&f, &n).unwrap();
        prop_assert!((0.5 * (after.lower + after.upper) - 1.0).abs() <= 1e-10);
        prop_assert!((after.cond - before.cond).abs() <= 1e-10 * before.cond);
    }

    #[test]
    fn verdict_is_sign_invariant_and_rotation_equivariant(
        f in frame_strategy(2..7),
        flips in prop::collection::vec(any::<bool>(), 7),
        theta in angle(),
    ) {
        let v = classify_scalability(&f).unwrap();
        let flipped = Frame::new(
            f.vectors().iter().zip(&flips).map(|(&x, &s)| if s { -x } else { x }).collect()
        ).unwrap();
        let vf = classify_scalability(&flipped).unwrap();
        prop_assert_eq!(v.scalable, vf.scalable);
        prop_assert!((v.spread - vf.spread).abs() <= 1e-12);

        let vr = classify_scalability(&f.rotated(theta)).unwrap();
        // spread near the threshold may flip the verdict under rounding
        if (v.spread - FRAC_PI_2).abs() > 1e-9 {
            prop_assert_eq!(v.scalable, vr.scalable);
        }
        prop_assert!((v.spread - vr.spread).abs() <= 1e-12);
        // arc_start moves by θ mod π unless the arc is ambiguous
        let shift = (vr.arc_start - v.arc_start - theta).rem_euclid(PI);
        let dirs = directions_mod_pi(&f).unwrap();
        let arc = min_covering_arc(&dirs);
        let gap = PI - arc.spread;
        let second_gap = (0..dirs.len())
            .map(|p| {
                let next = if p + 1 == dirs.len() { dirs.angles[0] + PI } else { dirs.angles[p + 1] };
                next - dirs.angles[p]
            })
            .filter(|&g| (g - gap).abs() > 1e-9)
            .fold(0.0, f64::max);
        if gap - second_gap > 1e-6 {
            prop_assert!(shift.min(PI - shift) <= 1e-12 * 1e3);
        }
    }

    #[test]
    fn scalable_witness_is_tight(f in frame_strategy(2..7)) {
        let v = classify_scalability(&f).unwrap();
        if let Some(w) = v.witness {
            let b = scaled_bounds(&f, &w).unwrap();
            prop_assert!(b.cond <= 1.0 + 1e-9);
        } else {
            prop_assert!(!v.scalable);
        }
    }

    #[test]
    fn two_vector_closed_form_matches_eigensolver(k in 0.001f64..=1.0, a in 0.0f64..0.999) {
        let u = Vec2::new(k, 0.0);
        let v = Vec2::new(a, (1.0 - a * a).sqrt());
        let cfg = two_vector_config(u, v).unwrap();
        let e = two_vector_eigen(&cfg);
        let s = SymMatrix2::outer(u) + SymMatrix2::outer(v);
        let lib = sym2_eigen(&s).unwrap();
        prop_assert!((e.lambda1 - lib.lambda_max).abs() <= 1e-10);
        prop_assert!((e.lambda2 - lib.lambda_min).abs() <= 1e-10);
        let f = two_vector_condition(&cfg);
        prop_assert!((f - lib.lambda_max / lib.lambda_min).abs() <= 1e-9 * f);
        // eigenvector identity for the larger eigenvalue
        let b = (1.0 - a * a).sqrt();
        let ev = Vec2::new(e.w * k + a, b);
        prop_assert!((s.apply(ev) - ev * e.lambda1).norm() <= 1e-9 * ev.norm().max(1.0));
    }

    #[test]
    fn best_pair_reaches_pair_formula(f in quadrant_strategy(2..6)) {
        let r = best_pair_scaling(&f).unwrap();
        let (i, j) = r.pair.unwrap();
        let a = pair_cosine(f.get(i), f.get(j));
        prop_assert!((r.cond() - (1.0 + a) / (1.0 - a)).abs() <= 1e-9 * r.cond());
        for p in 0..f.len() {
            for q in p + 1..f.len() {
                prop_assert!(pair_cosine(f.get(p), f.get(q)) >= a - 1e-15);
            }
        }
    }

    #[test]
    fn inline_component_beats_samples(f in frame_strategy(3..6), j in 0usize..6, xs in prop::collection::vec(0.0f64..20.0, 20)) {
        let j = j % f.len();
        let Ok((x, r)) = optimal_inline_component(&f, j) else { return Ok(()); };
        let dir = f.get(j).normalized();
        for t in xs.into_iter().chain([0.0, x * 0.5, x * 2.0]) {
            let mut vs = f.vectors().to_vec();
            vs[j] = dir * t.sqrt();
            let c = frame_bounds(&vs).unwrap().cond;
            prop_assert!(r.cond() <= c + 1e-9 * c.min(1e12));
        }
    }

    #[test]
    fn restricted_weights_are_feasible(f in quadrant_strategy(2..6), eps in 0.0f64..0.5) {
        let b = Budget::new(eps).unwrap();
        let r = restricted_scaling(&f, b).unwrap();
        for &w in r.weights() {
            prop_assert!(w >= 1.0 - eps && w <= 1.0 + eps);
        }
    }

    #[test]
    fn growing_the_shorter_vector_never_hurts(
        ratio in 0.3f64..0.99, theta in 0.2f64..FRAC_PI_2, eps in 0.01f64..0.3, rot in angle()
    ) {
        let (u, v) = (polar(ratio, rot), polar(1.0, rot + theta));
        let r = restricted_pair(u, v, Budget::new(eps).unwrap()).unwrap();
        let top = r.weights()[0];
        let mut last = f64::INFINITY;
        for s in 0..=20 {
            let w = 1.0 + (top - 1.0) * s as f64 / 20.0;
            let c = frame_bounds(&[u * w, v]).unwrap().cond;
            prop_assert!(c <= last + 1e-12 * c);
            last = c;
        }
    }

    #[test]
    fn restricted_cond_nonincreasing_in_budget(start in 0.0..PI, spread in 0.2f64..1.5, norm in 0.5f64..2.0,
                                                 interior in prop::collection::vec((0.05f64..0.95, 0.3f64..2.0), 1..3)) {
        let mut vs = vec![polar(norm, start), polar(norm, start + spread)];
        vs.extend(interior.iter().map(|&(s, r)| polar(r, start + s * spread)));
        let f = Frame::new(vs).unwrap();
        let mut last = f64::INFINITY;
        for i in 0..=20 {
            let c = restricted_scaling(&f, Budget::new(0.01 * i as f64).unwrap()).unwrap().cond();
            prop_assert!(c <= last * (1.0 + 1e-12));
            last = c;
        }
    }

    #[test]
    fn interior_vector_raises_cond_with_equal_outer_norms(
        start in 0.0..PI, spread in 0.2f64..1.5, norm in 0.5f64..2.0, s in 0.02f64..0.98
    ) {
        let outers = [polar(norm, start), polar(norm, start + spread)];
        let dir = polar(1.0, start + s * spread);
        let mut last = frame_bounds(&outers).unwrap().cond;
        for i in 1..=20 {
            let t = 0.1 * i as f64;
            let c = frame_bounds(&[outers[0], outers[1], dir * t]).unwrap().cond;
            prop_assert!(c >= last * (1.0 - 1e-12));
            last = c;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn doubling_levels_never_hurts(f in frame_strategy(2..4), n in 2usize..6) {
        let coarse = grid_search_scaling(&f, &SearchSpec::uniform(f.len(), 0.0, 2.0, n).unwrap()).unwrap();
        let fine = grid_search_scaling(&f, &SearchSpec::uniform(f.len(), 0.0, 2.0, 2 * n - 1).unwrap()).unwrap();
        prop_assert!(fine.grid_cond <= coarse.grid_cond);
    }

    #[test]
    fn search_is_scale_invariant(f in frame_strategy(2..4), t in 0.1f64..10.0) {
        let a = grid_search_scaling(&f, &SearchSpec::uniform(f.len(), 0.5, 1.5, 7).unwrap()).unwrap();
        let b = grid_search_scaling(&f, &SearchSpec::uniform(f.len(), 0.5 * t, 1.5 * t, 7).unwrap()).unwrap();
        prop_assert!((a.grid_cond - b.grid_cond).abs() <= 1e-10 * a.grid_cond);
    }

    #[test]
    fn refine_never_worsens(f in frame_strategy(2..5), w in prop::collection::vec(0.5f64..1.5, 5)) {
        let init = Scaling::new(w[..f.len()].to_vec()).unwrap();
        let boxes = vec![Interval::new(0.5, 1.5).unwrap(); f.len()];
        let before = scaled_bounds(&f, &init).unwrap().cond;
        let after = refine_scaling(&f, &init, &boxes, 50).unwrap();
        prop_assert!(after.cond() <= before);
        for &x in after.weights() {
            prop_assert!((0.5..=1.5).contains(&x));
        }
    }

    #[test]
    fn oracle_never_beats_best_pair(f in quadrant_strategy(3..4)) {
        let bp = best_pair_scaling(&f).unwrap();
        let grid = grid_search_scaling(&f, &SearchSpec::uniform(3, 0.0, 2.0, 31).unwrap()).unwrap();
        prop_assert!(grid.result.cond() >= bp.cond() - 1e-3);
    }
}

#[test]
fn interior_vector_can_lower_cond_with_unequal_outer_norms() {
    // short outer at 80°, long outer at 0°: a vector next to the short one
    // fills in the weak direction, so the stated monotonicity needs equal
    // outer norms
    let outers = [polar(1.0, 0.0), polar(0.3, 80f64.to_radians())];
    let dir = polar(1.0, 78f64.to_radians());
    let base = frame_bounds(&outers).unwrap().cond;
    let with = frame_bounds(&[outers[0], outers[1], dir * 0.5]).unwrap().cond;
    assert!(with < base);
}

#[test]
fn restricted_rule_is_beaten_on_the_three_quadrant_frame() {
    // both outer vectors can grow to 1 + ε; the rule keeps them at 1
    let f = Frame::new([10.0f64, 40.0, 80.0].iter().map(|d| polar(1.0, d.to_radians())).collect()).unwrap();
    let b = Budget::new(0.1).unwrap();
    let rule = restricted_scaling(&f, b).unwrap();
    let grid = grid_search_scaling(&f, &SearchSpec::budgeted(3, b, 21).unwrap()).unwrap();
    assert_eq!(rule.weights(), &[1.0, 0.9, 1.0]);
    assert_eq!(grid.result.weights(), &[1.1, 0.9, 1.1]);
    assert!(grid.result.cond() < rule.cond() - 0.2);
}
