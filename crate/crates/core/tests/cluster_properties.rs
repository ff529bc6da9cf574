use num_complex::Complex64;
use pwcheck_core::cluster::{
    betti, betti_via_mayer_vietoris, classify, fiber_radii, sphere_chart, weight_table, ClusterKind, ExchangeMatrix2D,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn mayer_vietoris_matches_direct_betti() {
    for b in 1..=16u32 {
        let spec = classify(&ExchangeMatrix2D::type2(b as i64)).unwrap();
        assert_eq!(spec.kind, ClusterKind::TypeII(b));
        let direct = betti(&spec);
        assert_eq!(direct, [1, 0, 2 * b as usize - 1]);
        assert_eq!(betti_via_mayer_vietoris(b).unwrap(), direct, "b = {b}");
    }
}

#[test]
fn weight_tables_sum_to_betti() {
    let mut xs = vec![ExchangeMatrix2D::type0()];
    for b in 1..=10 {
        xs.push(ExchangeMatrix2D::type1(b));
        xs.push(ExchangeMatrix2D::type2(b));
    }
    for x in xs {
        let spec = classify(&x).unwrap();
        assert_eq!(weight_table(&spec).row_sums(), betti(&spec), "{:?}", spec.kind);
    }
}

#[test]
fn fiber_radii_residuals() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..1000 {
        let b = rng.gen_range(1..=12u32);
        let s = rng.gen_range(-4.0..4.0);
        let t = rng.gen_range(-0.5..0.5);
        let y = Complex64::from_polar(f64::exp(t), rng.gen_range(0.0..std::f64::consts::TAU));
        let (x, xp) = fiber_radii(b, s, t, y).unwrap();
        let a = (y.powu(b) + 1.0).norm();
        assert!(x >= 0.0 && xp >= 0.0);
        let scale = 1.0 + s.abs() + a;
        assert!(((x * x - xp * xp) - s).abs() / scale < 1e-12, "b={b} s={s} t={t}");
        assert!((x * xp - a).abs() / scale < 1e-12, "b={b} s={s} t={t}");
    }
}

#[test]
fn fiber_radii_rejects_inconsistent_modulus() {
    assert!(fiber_radii(3, 0.0, 0.0, Complex64::new(2.0, 0.0)).is_err());
}

#[test]
fn charts_tile_the_circle() {
    for b in 1..=8u32 {
        let total: f64 = (1..=b).map(|j| sphere_chart(b, j).unwrap().phi_width()).sum();
        assert!((total - std::f64::consts::TAU).abs() < 1e-12);
        // chart points satisfy x x' = y^b + 1
        let c = sphere_chart(b, 1).unwrap();
        let p = c.point(0.7, c.phi.0 + 0.3 * c.phi_width());
        assert!((p.x * p.x_prime - (p.y.powu(b) + 1.0)).norm() < 1e-12);
    }
    assert!(sphere_chart(3, 0).is_err());
    assert!(sphere_chart(3, 4).is_err());
}
