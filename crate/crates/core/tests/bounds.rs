use num_bigint::BigInt;
use num_traits::One;

use recipsym::bounds::{
    enclosure, telescoping_reference, zeta_enclosure, ConstantId, TelescopingSums,
};
use recipsym::poly::Polynomial;
use recipsym::rational::{parse_fraction, Rational};
use recipsym::symfunc::ColumnStream;

fn decimal(text: &str) -> Rational {
    let (int_part, frac) = text.split_once('.').unwrap();
    let digits = format!("{int_part}{frac}");
    parse_fraction(&format!("{digits}/1{}", "0".repeat(frac.len()))).unwrap()
}

// Thirty-digit truncations from an independent high-precision evaluation.
const REFERENCE: [(ConstantId, &str); 5] = [
    (ConstantId::Pi2Over6, "1.644934066848226436472415166646"),
    (ConstantId::Pi4Over90, "1.082323233711138191516003696541"),
    (ConstantId::Pi4Over120, "0.811742425283353643637002772405"),
    (ConstantId::Pi2Over12, "0.822467033424113218236207583323"),
    (ConstantId::Zeta2Minus1, "0.644934066848226436472415166646"),
];

#[test]
fn enclosures_nest_and_contain_reference() {
    for (id, text) in REFERENCE {
        let x = decimal(text);
        // derived constants multiply enclosures, so keep them one decade lower
        let n = if id.is_derived() { 1_000 } else { 10_000 };
        let coarse = enclosure(id, n).unwrap();
        let fine = enclosure(id, n * 10).unwrap();
        assert!(coarse.contains_interval(&fine), "{id:?}");
        assert!(fine.width() < coarse.width(), "{id:?}");
        // reference truncated at 30 digits lies within 1e-30 of the constant
        let ulp = Rational::new(BigInt::one(), BigInt::from(10).pow(30));
        assert!(fine.lo <= &x + &ulp && x <= fine.hi, "{id:?}");
    }
}

#[test]
fn zeta4_width_law() {
    let e = zeta_enclosure(4, 1000).unwrap();
    let width = Rational::new(BigInt::one(), BigInt::from(3))
        * (Rational::new(BigInt::one(), BigInt::from(1000u64.pow(3)))
            - Rational::new(BigInt::one(), BigInt::from(1001u64.pow(3))));
    assert_eq!(e.width(), width);
}

#[test]
fn monomial_lead_one_window() {
    // 1 < sigma_1(n) < 2 for x^m, compared on integers N_1 / D
    let two = enclosure(ConstantId::Pi2Over6, 100).unwrap();
    assert!(two.hi < Rational::from_integer(BigInt::from(2)));
    let (hi_num, hi_den) = (two.hi.numer().clone(), two.hi.denom().clone());
    for m in 2..=6 {
        let f = Polynomial::monomial(m);
        let mut stream = ColumnStream::truncated(&f, 1);
        stream.advance().unwrap();
        for n in 2..=1000u64 {
            let col = stream.advance().unwrap();
            let (num, den) = (&col.numerators()[1], col.shared_denominator());
            assert!(num > den, "x^{m}, n = {n}");
            assert!(num * &hi_den < &hi_num * den, "x^{m}, n = {n}");
        }
    }
}

#[test]
fn lead_ge2_window() {
    // 2x^2: 0 < sigma_1(n) < pi^2/12 < 1
    let bound = enclosure(ConstantId::Pi2Over12, 100).unwrap();
    assert!(bound.hi < Rational::one());
    let f = Polynomial::from_i64s(&[0, 0, 2]).unwrap();
    let mut stream = ColumnStream::truncated(&f, 1);
    for n in 1..=1000u64 {
        let col = stream.advance().unwrap();
        let (num, den) = (&col.numerators()[1], col.shared_denominator());
        assert!(num * bound.hi.denom() < bound.hi.numer() * den, "n = {n}");
    }
}

#[test]
fn telescoping_to_ten_thousand() {
    // 1/(j^2+2) has no closed form and its denominators grow quickly
    for (shift, n_max) in [(0u64, 10_000), (2, 500)] {
        let mut sums = TelescopingSums::new(shift);
        for _ in 0..n_max {
            let (n, s) = sums.next().unwrap();
            if shift == 0 {
                assert_eq!(s, telescoping_reference(n, 0), "n = {n}");
            } else {
                assert!(s < telescoping_reference(n, 2) || n < 3, "n = {n}");
            }
        }
    }
}
