use num_complex::Complex64;
use proptest::prelude::*;
use pwcheck_core::exactlin::{
    image, kernel, rank, rational_descent, CyclotomicElement, ExactMatrix, Field, FieldElement, Subspace,
};

const ORDERS: [u32; 7] = [3, 4, 5, 8, 9, 12, 16];

fn zeta(field: &Field, k: i64) -> FieldElement {
    match field {
        Field::Cyclotomic(f) => FieldElement::Cyclotomic(CyclotomicElement::generator_power(f, k)),
        Field::Rational => panic!("rational field has no generator"),
    }
}

/// `Σ_k coeffs[k] ζ^k`, built only from ring operations.
fn element(field: &Field, coeffs: &[i64]) -> FieldElement {
    coeffs.iter().enumerate().fold(field.zero(), |acc, (k, &a)| {
        &acc + &(&field.from_int(a) * &zeta(field, k as i64))
    })
}

/// The same element evaluated numerically at `ζ = e^{2πi/n}`.
fn oracle(n: u32, coeffs: &[i64]) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, &a)| Complex64::from_polar(a as f64, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .sum()
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + b.norm())
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 1..10)
}

fn rational_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_axioms(n in prop::sample::select(ORDERS.to_vec()), a in coeffs(), b in coeffs(), c in coeffs()) {
        let f = Field::cyclotomic(n).unwrap();
        let (x, y, z) = (element(&f, &a), element(&f, &b), element(&f, &c));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x - &x, f.zero());
        prop_assert!(close((&x * &y).to_complex(), oracle(n, &a) * oracle(n, &b)));
    }

    #[test]
    fn cyclotomic_inverses(n in prop::sample::select(ORDERS.to_vec()), a in coeffs()) {
        let f = Field::cyclotomic(n).unwrap();
        let x = element(&f, &a);
        if x.is_zero() {
            prop_assert!(x.inverse().is_err());
        } else {
            prop_assert_eq!(&x * &x.inverse().unwrap(), f.one());
            prop_assert!(close(x.inverse().unwrap().to_complex(), oracle(n, &a).inv()));
        }
    }

    #[test]
    fn galois_is_a_ring_map(n in prop::sample::select(ORDERS.to_vec()), a in coeffs(), b in coeffs()) {
        let f = Field::cyclotomic(n).unwrap();
        let (x, y) = (element(&f, &a), element(&f, &b));
        for k in f.galois_exponents() {
            prop_assert_eq!((&x * &y).galois(k).unwrap(), &x.galois(k).unwrap() * &y.galois(k).unwrap());
            prop_assert_eq!((&x + &y).galois(k).unwrap(), &x.galois(k).unwrap() + &y.galois(k).unwrap());
            // ζ ↦ ζ^k is evaluation at e^{2πik/n}
            let shifted: Complex64 = a.iter().enumerate()
                .map(|(j, &c)| Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * (j as f64) * k as f64 / n as f64))
                .sum();
            prop_assert!(close(x.galois(k).unwrap().to_complex(), shifted));
        }
    }

    #[test]
    fn rank_nullity(rows in rational_matrix(6, 7)) {
        let m = ExactMatrix::from_i64_rows(&rows).unwrap();
        let k = kernel(&m);
        prop_assert_eq!(rank(&m) + k.dim(), m.cols());
        prop_assert_eq!(image(&m).dim(), rank(&m));
        prop_assert_eq!(rank(&m.transpose()), rank(&m));
        for v in k.basis() {
            prop_assert!(m.apply(v).unwrap().iter().all(FieldElement::is_zero));
        }
    }

    #[test]
    fn echelon_idempotent_and_order_free(rows in rational_matrix(5, 5), seed in any::<u64>()) {
        let m = ExactMatrix::from_i64_rows(&rows).unwrap();
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(&once.pivots, &twice.pivots);
        let mut permuted = m.row_vectors();
        let len = permuted.len();
        permuted.rotate_left((seed as usize) % len);
        permuted.reverse();
        let a = Subspace::span(&Field::Rational, m.cols(), m.row_vectors()).unwrap();
        let b = Subspace::span(&Field::Rational, m.cols(), permuted).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn descent_round_trip(
        rows in rational_matrix(4, 5),
        n in prop::sample::select(ORDERS.to_vec()),
        scalars in prop::collection::vec(coeffs(), 4),
    ) {
        let m = ExactMatrix::from_i64_rows(&rows).unwrap();
        let rational = Subspace::span(&Field::Rational, m.cols(), m.row_vectors()).unwrap();
        let f = Field::cyclotomic(n).unwrap();
        // rescale each generator by a nonzero cyclotomic scalar
        let vectors: Vec<Vec<FieldElement>> = m.row_vectors().into_iter().zip(&scalars).map(|(v, s)| {
            let mut s = element(&f, s);
            if s.is_zero() { s = f.one(); }
            v.iter().map(|x| &f.embed(x).unwrap() * &s).collect()
        }).collect();
        let extended = Subspace::span(&f, m.cols(), vectors).unwrap();
        prop_assert_eq!(&extended, &rational.extend_scalars(&f).unwrap());
        prop_assert_eq!(rational_descent(&extended).unwrap(), rational);
    }
}

#[test]
fn irrational_span_is_not_descended() {
    for n in ORDERS {
        let f = Field::cyclotomic(n).unwrap();
        let s = Subspace::span(&f, 2, vec![vec![f.one(), zeta(&f, 1)]]).unwrap();
        assert!(rational_descent(&s).is_err(), "order {n}");
    }
}

#[test]
fn intersection_and_sum_dimensions() {
    let q = |v: &[i64]| v.iter().map(|&x| FieldElement::from(x)).collect::<Vec<_>>();
    let a = Subspace::span(&Field::Rational, 4, vec![q(&[1, 1, 0, 0]), q(&[0, 1, 1, 0])]).unwrap();
    let b = Subspace::span(&Field::Rational, 4, vec![q(&[0, 1, 1, 0]), q(&[0, 0, 0, 1])]).unwrap();
    let meet = a.intersect(&b).unwrap();
    let join = a.sum(&b).unwrap();
    assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
    assert!(meet.contains(&q(&[0, 2, 2, 0])).unwrap());
}
