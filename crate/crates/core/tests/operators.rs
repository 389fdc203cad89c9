use num_complex::Complex64;
use proptest::prelude::*;

use phasekit::families::recurrence_table;
use phasekit::operators::{
    anticommutator, arccos_op, arccos_series, arcsin_op, build_cosine, build_sine, commutator, eigendecompose,
    shift_ops, spectral_map, OpLabel, TruncatedOperator,
};
use phasekit::verify::{legendre_roots, product_entry_formulas};
use phasekit::{FamilySpec, RecurrenceTable};

const DIM: usize = 12;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn raw_table() -> impl Strategy<Value = RecurrenceTable> {
    (prop::collection::vec(0.01f64..2.0, DIM), prop::collection::vec(-1.0f64..1.0, DIM))
        .prop_map(|(f, g)| RecurrenceTable::from_coefficients(f, g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cosine_and_sine_are_hermitian(table in raw_table()) {
        let c = build_cosine(&table, DIM).unwrap();
        let s = build_sine(&table, DIM).unwrap();
        prop_assert_eq!(c.hermitian_deviation(), 0.0);
        prop_assert_eq!(s.hermitian_deviation(), 0.0);
        prop_assert_eq!(c.label(), OpLabel::C);
    }

    #[test]
    fn shift_decomposition_and_rotation(table in raw_table()) {
        let c = build_cosine(&table, DIM).unwrap();
        let s = build_sine(&table, DIM).unwrap();
        let (e, edag, e0) = shift_ops(&table, DIM).unwrap();
        let from_shifts = e.add(&edag).unwrap().scale(c64(0.5, 0.0)).add(&e0).unwrap();
        prop_assert!(from_shifts.max_abs_diff(&c).unwrap() <= 1e-15);
        let d = TruncatedOperator::quarter_turn(DIM, 1);
        let rotated = d.matmul(&c).unwrap().matmul(&d.adjoint()).unwrap();
        prop_assert!(rotated.max_abs_diff(&s).unwrap() <= 1e-15);
    }

    #[test]
    fn number_commutators(table in raw_table()) {
        let c = build_cosine(&table, DIM).unwrap();
        let s = build_sine(&table, DIM).unwrap();
        let (_, _, e0) = shift_ops(&table, DIM).unwrap();
        let n = TruncatedOperator::number(DIM);
        let nc = commutator(&n, &c).unwrap();
        prop_assert!(nc.max_abs_diff(&s.sub(&e0).unwrap().scale(c64(0.0, -1.0))).unwrap() <= 1e-12);
        let nnc = commutator(&n, &nc).unwrap();
        prop_assert!(nnc.max_abs_diff(&c.sub(&e0).unwrap()).unwrap() <= 1e-12);
    }

    #[test]
    fn interior_block_matches_entry_formulas(table in raw_table()) {
        let c = build_cosine(&table, DIM).unwrap();
        let s = build_sine(&table, DIM).unwrap();
        let n = TruncatedOperator::number(DIM);
        let products = [
            c.matmul(&c).unwrap(),
            s.matmul(&s).unwrap(),
            commutator(&c, &s).unwrap(),
            anticommutator(&c, &s).unwrap(),
            anticommutator(&n, &c).unwrap(),
            anticommutator(&n, &s).unwrap(),
        ];
        for (product, formula) in products.iter().zip(product_entry_formulas(&table, DIM)) {
            prop_assert!(product.max_abs_diff_block(&formula, DIM - 2).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn spectral_reconstruction(table in raw_table()) {
        let c = build_cosine(&table, DIM).unwrap();
        let spectrum = eigendecompose(&c).unwrap();
        let back = TruncatedOperator::new(OpLabel::Derived, spectrum.reconstruct()).unwrap();
        prop_assert!(back.max_abs_diff(&c).unwrap() <= 1e-12);
        prop_assert!(spectrum.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn angle_operators_reflect(mu in -0.9f64..2.5, nu in -0.9f64..2.5) {
        let table = recurrence_table(&FamilySpec::jacobi(mu, nu).unwrap(), DIM);
        let c = build_cosine(&table, DIM).unwrap();
        let s = build_sine(&table, DIM).unwrap();
        let theta_c = arccos_op(&c).unwrap();
        let theta_s = arcsin_op(&s).unwrap();
        let d = TruncatedOperator::quarter_turn(DIM, -1);
        let half_pi = TruncatedOperator::identity(DIM).scale(c64(std::f64::consts::FRAC_PI_2, 0.0));
        let rhs = d.matmul(&half_pi.sub(&theta_s).unwrap()).unwrap().matmul(&d.adjoint()).unwrap();
        prop_assert!(rhs.max_abs_diff(&theta_c).unwrap() <= 1e-12);
        let back = spectral_map(&theta_c, f64::cos, OpLabel::Derived).unwrap();
        prop_assert!(back.max_abs_diff(&c).unwrap() <= 1e-12);
    }
}

#[test]
fn legendre_nodes_match_roots() {
    let table = recurrence_table(&FamilySpec::legendre(), 12);
    for n in [2, 5, 10] {
        let eig = eigendecompose(&build_cosine(&table, n).unwrap()).unwrap();
        for (a, b) in eig.values.iter().zip(legendre_roots(n)) {
            assert!((a - b).abs() <= 1e-12);
        }
    }
}

#[test]
fn series_converges_towards_spectral() {
    let table = recurrence_table(&FamilySpec::chebyshev_u(), 8);
    let c = build_cosine(&table, 8).unwrap();
    let exact = arccos_op(&c).unwrap();
    let coarse = arccos_series(&c, 10).unwrap();
    let fine = arccos_series(&c, 200).unwrap();
    let coarse_err = coarse.operator.max_abs_diff(&exact).unwrap();
    let fine_err = fine.operator.max_abs_diff(&exact).unwrap();
    assert!(fine_err < coarse_err);
    assert!(fine_err <= 1e-2);
    assert!(fine.residual < coarse.residual);
}

#[test]
fn margins_and_csv() {
    let table = recurrence_table(&FamilySpec::legendre(), 4);
    let c = build_cosine(&table, 4).unwrap();
    assert_eq!(c.margin(), 0);
    let c2 = c.matmul(&c).unwrap();
    assert_eq!(c2.margin(), 2);
    assert_eq!(c2.matmul(&c).unwrap().margin(), 4);
    let csv = c.to_csv();
    assert!(csv.starts_with("row,col,re,im\n"));
    assert_eq!(csv.lines().count(), 1 + 16);
}

#[test]
fn unbounded_spectrum_is_rejected() {
    let table = RecurrenceTable::from_coefficients(vec![3.0; 6], vec![0.0; 6]).unwrap();
    let c = build_cosine(&table, 6).unwrap();
    let err = arccos_op(&c).unwrap_err();
    assert_eq!(err.code(), "SPECTRUM_OUT_OF_RANGE");
    let bad = TruncatedOperator::new(OpLabel::Derived, nalgebra::DMatrix::from_element(2, 2, c64(0.0, 1.0))).unwrap();
    assert_eq!(eigendecompose(&bad).unwrap_err().code(), "NOT_HERMITIAN");
}
