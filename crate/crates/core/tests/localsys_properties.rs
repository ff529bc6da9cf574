use proptest::prelude::*;
use pwcheck_core::exactlin::{quotient_dim, ExactMatrix, Field, FieldElement, Subspace};
use pwcheck_core::localsys::{
    h1_punctured_disk, invariants, monodromy_ib, pushforward_cohomology, MonodromyRep, PushforwardCohomology,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn mat(m: [[i64; 2]; 2]) -> ExactMatrix {
    ExactMatrix::from_i64_rows(&[m[0].to_vec(), m[1].to_vec()]).unwrap()
}

fn det(m: &[[i64; 2]; 2]) -> i64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Unipotent, identity, and generic invertible matrices in roughly equal shares.
fn random_matrix(rng: &mut ChaCha8Rng) -> [[i64; 2]; 2] {
    match rng.gen_range(0..4) {
        0 => [[1, 0], [0, 1]],
        1 => [[1, rng.gen_range(-5..=5)], [0, 1]],
        2 => [[1, 0], [rng.gen_range(-5..=5), 1]],
        _ => loop {
            let m = [[rng.gen_range(-4..=4), rng.gen_range(-4..=4)], [rng.gen_range(-4..=4), rng.gen_range(-4..=4)]];
            if det(&m) != 0 {
                break m;
            }
        },
    }
}

/// `dim V^k / {((T_i - 1) v)_i}` from the quotient of subspaces.
fn brute_force_h1(ms: &[[[i64; 2]; 2]]) -> usize {
    let k = ms.len();
    let mut generators = Vec::new();
    for basis_vector in 0..2 {
        let mut image = Vec::with_capacity(2 * k);
        for m in ms {
            for r in 0..2 {
                let tv = m[r][basis_vector];
                let v = i64::from(r == basis_vector);
                image.push(FieldElement::from(tv - v));
            }
        }
        generators.push(image);
    }
    let coboundaries = Subspace::span(&Field::Rational, 2 * k, generators).unwrap();
    quotient_dim(&Subspace::full(&Field::Rational, 2 * k), &coboundaries).unwrap()
}

#[test]
fn euler_characteristic_formula_on_random_reps() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe1e1);
    for _ in 0..500 {
        let k = rng.gen_range(1..=4);
        let ms: Vec<[[i64; 2]; 2]> = (0..k).map(|_| random_matrix(&mut rng)).collect();
        let rep = MonodromyRep::from_matrices(ms.iter().map(|m| mat(*m)).collect()).unwrap();
        let inv = invariants(&rep).dim();
        let direct = brute_force_h1(&ms);
        assert_eq!(direct, 2 * k + inv - 2, "{ms:?}");
        assert_eq!(h1_punctured_disk(&rep), direct, "{ms:?}");
        let p = pushforward_cohomology(&rep).unwrap();
        assert_eq!(p.h0, inv);
        assert!(p.h0 <= 2 && p.h1 <= direct && p.h2 == 0);
    }
}

#[test]
fn ib_outputs_do_not_depend_on_b() {
    for b in 1..=20 {
        let rep = MonodromyRep::from_matrices(vec![monodromy_ib(b)]).unwrap();
        assert_eq!(invariants(&rep).dim(), 1);
        assert_eq!(h1_punctured_disk(&rep), 1);
        assert_eq!(pushforward_cohomology(&rep).unwrap(), PushforwardCohomology { h0: 1, h1: 0, h2: 0 });
        let pair = MonodromyRep::from_matrices(vec![monodromy_ib(b), mat([[1, 0], [-(b as i64), 1]])]).unwrap();
        assert_eq!(h1_punctured_disk(&pair), 2);
        assert_eq!(pushforward_cohomology(&pair).unwrap(), PushforwardCohomology { h0: 0, h1: 0, h2: 0 });
    }
}

fn invertible() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::array::uniform2(prop::array::uniform2(-4i64..=4)).prop_filter("invertible", |m| det(m) != 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn outputs_are_conjugation_invariant(ms in prop::collection::vec(invertible(), 1..=3), p in invertible()) {
        let rep = MonodromyRep::from_matrices(ms.iter().map(|m| mat(*m)).collect()).unwrap();
        let conj = rep.conjugate(&mat(p)).unwrap();
        prop_assert_eq!(invariants(&rep).dim(), invariants(&conj).dim());
        prop_assert_eq!(h1_punctured_disk(&rep), h1_punctured_disk(&conj));
        prop_assert_eq!(pushforward_cohomology(&rep).unwrap(), pushforward_cohomology(&conj).unwrap());
        // coinvariants: dim V / Σ im(T_i - 1)
        let coinv = |r: &MonodromyRep| {
            let rows: Vec<Vec<FieldElement>> = r.matrices().iter()
                .flat_map(|t| t.sub(&ExactMatrix::identity(&Field::Rational, 2)).unwrap().transpose().row_vectors())
                .collect();
            2 - Subspace::span(&Field::Rational, 2, rows).unwrap().dim()
        };
        prop_assert_eq!(invariants(&rep).dim() + coinv(&rep), invariants(&conj).dim() + coinv(&conj));
    }
}
