use devilfish::certify::{certify_nonpositive, enclose, natural_enclosure, CertifyOptions, Region};
use devilfish::devilfish::{devil_fish, in_domain};
use devilfish::fuzz::{self, check_triangle, replay, FuzzConfig, GeneratorKind};
use devilfish::interval::{Box2, Interval};
use devilfish::Triangle;
use proptest::prelude::*;

fn triangle() -> impl Strategy<Value = Triangle> {
    (0.01f64..1.0, 0.01f64..1.0, 0.01f64..1.0)
        .prop_filter_map("not a triangle", |(a, b, c)| Triangle::with_margin(a, b, c, 1e-9).ok())
}

/// A point of the region, drawn as `x` in `[1/2, 1]` and `y` in `[1 - x, x]`.
fn region_point() -> impl Strategy<Value = (f64, f64)> {
    (0.5f64..=1.0, 0.0f64..=1.0).prop_map(|(x, s)| {
        let y = (1.0 - x) + s * (2.0 * x - 1.0);
        (x, y.clamp(1.0 - x, x))
    })
}

fn sub_box() -> impl Strategy<Value = Box2> {
    (0.5f64..1.0, 0.0f64..1.0, 1e-6f64..0.2, 1e-6f64..0.2)
        .prop_map(|(x, y, w, h)| Box2::new(Interval::new(x, (x + w).min(1.0)), Interval::new(y, (y + h).min(1.0))))
}

fn rel_close(p: f64, q: f64, scale: f64, tol: f64) -> bool {
    (p - q).abs() <= tol * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn devil_fish_is_symmetric((x, y) in region_point()) {
        let f = devil_fish(x, y).unwrap();
        let g = devil_fish(y, x).unwrap();
        prop_assert!(rel_close(f, g, 1.0, 1e-12), "F({x},{y}) = {f}, F({y},{x}) = {g}");
    }

    #[test]
    fn residuals_scale_quadratically(t in triangle(), lambda in 1e-3f64..1e3) {
        let s = t.scaled(lambda).unwrap();
        let scale = lambda * lambda * t.largest_side().powi(2);
        prop_assert!(rel_close(s.altitude_residual(), lambda * lambda * t.altitude_residual(), scale, 1e-10));
        prop_assert!(rel_close(s.median_residual(), lambda * lambda * t.median_residual(), scale, 1e-10));
        prop_assert!(rel_close(s.corollary_a_residual(), lambda * lambda * t.corollary_a_residual(), scale, 1e-10));
    }

    #[test]
    fn residuals_are_permutation_invariant(t in triangle()) {
        let [a, b, c] = t.sides();
        let s2 = t.largest_side().powi(2);
        for [p, q, r] in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            let u = Triangle::new(p, q, r).unwrap();
            prop_assert!(rel_close(u.altitude_residual(), t.altitude_residual(), s2, 1e-12));
            prop_assert!(rel_close(u.median_residual(), t.median_residual(), s2, 1e-12));
        }
    }

    #[test]
    fn triangle_measures_are_consistent(t in triangle()) {
        let [a, b, c] = t.sides();
        let [ha, hb, hc] = t.altitudes();
        let two_s = 2.0 * t.area();
        for v in [a * ha, b * hb, c * hc] {
            prop_assert!(rel_close(v, two_s, two_s, 1e-12));
        }
        let sorted = t.sorted_desc();
        let [ma, _, mc] = sorted.medians();
        prop_assert!(ma <= mc * (1.0 + 1e-12));
    }

    #[test]
    fn inequalities_hold(t in triangle()) {
        for out in check_triangle(&t, 1e-12) {
            prop_assert!(out.passed(), "{} failed on {:?}: {:?}", out.kind, t.sides(), out);
        }
    }

    #[test]
    fn enclosure_contains_sampled_values(b in sub_box(), u in 0.0f64..=1.0, v in 0.0f64..=1.0) {
        let Some(tb) = Region::default().tighten(&b) else { return Ok(()); };
        let x = tb.x.lo() + u * tb.x.width();
        let y = tb.y.lo() + v * tb.y.width();
        prop_assume!(in_domain(x, y));
        let f = devil_fish(x, y).unwrap();
        for enc in [natural_enclosure(&tb).unwrap(), enclose(&tb).unwrap()] {
            prop_assert!(enc.contains(f), "F({x},{y}) = {f} not in {enc} over {tb:?}");
        }
    }

    #[test]
    fn natural_enclosure_is_inclusion_monotone(b in sub_box()) {
        let Some(tb) = Region::default().tighten(&b) else { return Ok(()); };
        let parent = natural_enclosure(&tb).unwrap();
        let (l, r) = tb.bisect();
        for child in [l, r] {
            if let Some(c) = Region::default().tighten(&child) {
                prop_assert!(parent.encloses(&natural_enclosure(&c).unwrap()));
            }
        }
    }

    #[test]
    fn region_values_are_nonpositive((x, y) in region_point()) {
        prop_assert!(devil_fish(x, y).unwrap() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fuzz_reports_are_reproducible(seed in any::<u64>(), k in 0usize..4) {
        let cfg = FuzzConfig::new(2_000, seed, GeneratorKind::ALL[k]);
        prop_assert_eq!(fuzz::run(&cfg).unwrap(), fuzz::run(&cfg).unwrap());
    }

    #[test]
    fn witnesses_replay_exactly(seed in any::<u64>(), k in 0usize..4) {
        let cfg = FuzzConfig::new(2_000, seed, GeneratorKind::ALL[k]);
        let report = fuzz::run(&cfg).unwrap();
        for s in &report.checks {
            let w = s.worst.unwrap();
            let again = replay(s.check, w.sides, cfg.slack).unwrap();
            prop_assert!(rel_close(again.residual, w.residual, w.residual.abs(), 1e-14),
                "{}: {} vs {}", s.check, again.residual, w.residual);
        }
    }

    #[test]
    fn violations_grow_as_slack_shrinks(seed in any::<u64>(), k in 0usize..4) {
        let loose = FuzzConfig { slack: 1e-12, ..FuzzConfig::new(2_000, seed, GeneratorKind::ALL[k]) };
        let tight = FuzzConfig { slack: 0.0, ..loose };
        let (rl, rt) = (fuzz::run(&loose).unwrap(), fuzz::run(&tight).unwrap());
        for (a, b) in rl.checks.iter().zip(&rt.checks) {
            prop_assert!(b.failed >= a.failed);
        }
        let tight_hits: Vec<_> = rt.violations.iter().map(|v| (v.index, v.check)).collect();
        for v in &rl.violations {
            prop_assert!(tight_hits.contains(&(v.index, v.check)));
        }
    }
}

#[test]
fn certification_is_deterministic() {
    let opts = CertifyOptions {
        min_width: 1e-3,
        tau: 1e-4,
        ..Default::default()
    };
    let a = certify_nonpositive(&opts).unwrap();
    let b = certify_nonpositive(&opts).unwrap();
    assert_eq!(a, b);
}
