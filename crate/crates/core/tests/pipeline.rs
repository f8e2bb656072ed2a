//! End-to-end checks across modules on the small worked examples.

use num_bigint::BigInt;
use num_rational::BigRational;

use qmark::blockcode::{
    detect_block_period, encode_blocks, farey_incidence, first_slot_bits, lr_word, BlockPeriod, BlockTail,
    DigitSource, SurfaceData,
};
use qmark::contfrac::{cf_expand, cf_value, convergents, ContinuedFraction, DigitStream};
use qmark::jacobiperron::{jp_convergent, jp_expand, jp_factor_matrix};
use qmark::ktheory::{
    classification_correspondence, k0_blocks, k0_cuntz_krieger, lattice_lambda, smith_normal_form, IntegerMatrix,
    MatrixFlag,
};
use qmark::minkowski::{
    classify, classify_cf, inverse_question_mark, question_mark_binary, question_mark_exact, DomainClass, ImageClass,
};
use qmark::ExactNumber;

fn num(s: &str) -> ExactNumber {
    s.parse().unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn digits(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn continued_fraction_examples() {
    let show = |s: &str| cf_expand(&num(s)).to_string();
    assert_eq!(show("1/2"), "[0; 2]");
    assert_eq!(show("2/5"), "[0; 2, 2]");
    assert_eq!(show("7/3"), "[2; 3]");
    assert_eq!(show("sqrt(2)-1"), "[0; (2)]");
    assert_eq!(show("(1+sqrt(5))/2"), "[1; (1)]");
    assert_eq!(show("sqrt(3)"), "[1; (1, 2)]");
    // Not [0; (2)], despite the shared value of ?(x) being nearby.
    assert_eq!(show("(3-sqrt(5))/2"), "[0; 2, (1)]");

    let cf: ContinuedFraction = "[0; (2)]".parse().unwrap();
    assert_eq!(cf_value(&cf).unwrap(), num("sqrt(2)-1"));
    let c: Vec<String> = convergents(&cf, 3).iter().map(|x| x.to_string()).collect();
    assert_eq!(c, ["0", "1/2", "2/5"]);
    let fib = ContinuedFraction::finite(0, digits(&[1, 1, 1, 1])).unwrap();
    let c: Vec<String> = convergents(&fib, 4).iter().map(|x| x.to_string()).collect();
    assert_eq!(c, ["0", "1", "1/2", "2/3"]);
}

#[test]
fn question_mark_examples() {
    let qm = |s: &str| question_mark_exact(&num(s)).unwrap().to_string();
    assert_eq!(qm("1/3"), "1/4");
    assert_eq!(qm("sqrt(2)-1"), "2/5");
    assert_eq!(qm("0"), "0");
    assert_eq!(qm("1"), "1");
    assert_eq!(qm("2/5"), "3/8");

    assert_eq!(inverse_question_mark(&q(1, 2)).unwrap(), num("1/2"));
    assert_eq!(inverse_question_mark(&q(2, 5)).unwrap(), num("sqrt(2)-1"));
    assert_eq!(inverse_question_mark(&q(1, 4)).unwrap(), num("1/3"));

    let code = |s: &str| question_mark_binary(&s.parse().unwrap()).unwrap().to_string();
    assert_eq!(code("[0; 2, 2]"), "0.011");
    assert_eq!(code("[0; (2)]"), "0.0(1100)");
}

#[test]
fn classification_examples() {
    let c = classify(&num("3/7")).unwrap();
    assert_eq!((c.domain, c.image), (DomainClass::Rational, ImageClass::DyadicRational));
    let c = classify(&num("sqrt(2)-1")).unwrap();
    assert_eq!((c.domain, c.image), (DomainClass::QuadraticIrrational, ImageClass::NonDyadicRational));
    let stream = ContinuedFraction::stream(0, DigitStream::aperiodic((1..).map(BigInt::from)));
    let c = classify_cf(&stream, 32).unwrap();
    assert_eq!((c.domain, c.image), (DomainClass::OtherIrrational, ImageClass::Irrational));
}

#[test]
fn jacobi_perron_examples() {
    let e = jp_expand(&[num("3/7"), num("2/7")], 20).unwrap();
    assert_eq!(e.to_string(), "(0, 2), (0, 1), (1, 2); terminated");
    assert_eq!(jp_convergent(&e, 3).unwrap(), vec![q(3, 7), q(2, 7)]);

    let e = jp_expand(&[num("2/5")], 20).unwrap();
    assert_eq!(e.to_string(), "2, 2; terminated");
    assert_eq!(jp_convergent(&e, 2).unwrap(), vec![q(2, 5)]);

    let e = jp_expand(&[num("0"), num("1/3")], 20).unwrap();
    assert!(e.is_terminated() && e.is_empty());

    assert_eq!(jp_factor_matrix(&digits(&[2]), 1).unwrap().to_string(), "[[0, 1], [1, 2]]");
}

#[test]
fn block_examples() {
    let s11 = SurfaceData::new(1, 1).unwrap();
    assert_eq!((s11.block_length(), s11.slots()), (3, 1));
    let s04 = SurfaceData::new(0, 4).unwrap();
    assert_eq!((s04.block_length(), s04.slots(), s04.dimension()), (4, 2, 1));
    let s20 = SurfaceData::new(2, 0).unwrap();
    assert_eq!((s20.block_length(), s20.slots(), s20.dimension()), (4, 2, 5));

    let cf = cf_expand(&num("2/5"));
    let seq = encode_blocks(DigitSource::Cf(&cf), s11, 10).unwrap();
    assert_eq!(first_slot_bits(&seq), [false, true, true]);
    assert_eq!(seq.tail(), &BlockTail::Finite { length: 3 });
    assert_eq!(detect_block_period(&seq, 10), BlockPeriod::Finite { length: 3 });
    assert!(seq.is_dominated_by(&farey_incidence(3)));

    assert_eq!(lr_word(&cf, 10).unwrap(), "LRR");
    assert_eq!(lr_word(&ContinuedFraction::finite(0, digits(&[1, 1])).unwrap(), 10).unwrap(), "R");
    assert_eq!(lr_word(&"[0; (2)]".parse().unwrap(), 9).unwrap(), "LRRLLRRLL");

    let farey = farey_incidence(2);
    assert_eq!(farey.blocks().iter().map(|b| b.to_string()).collect::<Vec<_>>(), ["(1,1,1)", "(1,1,1)"]);
    assert!(farey_incidence(0).blocks().is_empty());

    let stream = ContinuedFraction::stream(0, DigitStream::aperiodic((1..).map(BigInt::from)));
    let seq = encode_blocks(DigitSource::Cf(&stream), s11, 64).unwrap();
    assert_eq!(detect_block_period(&seq, 64), BlockPeriod::AperiodicAtHorizon { horizon: 64 });
}

#[test]
fn k_theory_examples() {
    let m = |s: &str| s.parse::<IntegerMatrix>().unwrap();
    assert_eq!(smith_normal_form(&m("[[2, 4], [6, 8]]")).diagonal(), digits(&[2, 4]));
    assert_eq!(smith_normal_form(&m("[[0, -1], [-1, 1]]")).diagonal(), digits(&[1, 1]));

    let ck = k0_cuntz_krieger(&m("[[1, 1], [1, 1]]")).unwrap();
    assert!(ck.k0.is_trivial() && ck.k1_rank == 0);
    let ck = k0_cuntz_krieger(&m("[[1, 1], [1, 0]]")).unwrap();
    assert!(ck.k0.is_trivial() && ck.k1_rank == 0);
    let ck = k0_cuntz_krieger(&m("[[1, 0], [0, 1]]")).unwrap();
    assert!(ck.flags.contains(&MatrixFlag::PermutationMatrix));

    // The periodic part of [0; (2)] on S_{1,1} has factors 2, 2, 1, 1.
    let cf: ContinuedFraction = "[0; (2)]".parse().unwrap();
    let seq = encode_blocks(DigitSource::Cf(&cf), SurfaceData::new(1, 1).unwrap(), 5).unwrap();
    for k in 1..=4 {
        let g = k0_blocks(&seq, 1 + 4 * k).unwrap().group;
        assert_eq!(g.order(), Some(BigInt::from(1) << (2 * k)));
        assert_eq!(g.invariant_factors.len(), 2 * k);
    }

    let a = lattice_lambda(&[num("sqrt(2)-1")]).unwrap();
    assert_eq!(a.to_string(), "Z + Z(sqrt(2)-1)");
    assert_eq!(a.same_as(&lattice_lambda(&[num("sqrt(2)")]).unwrap()), Some(true));
    assert_eq!(lattice_lambda(&[num("3/2")]).unwrap().generators(), &[num("1/2")]);
}

#[test]
fn correspondence_examples() {
    let s11 = SurfaceData::new(1, 1).unwrap();
    let r = classification_correspondence(&cf_expand(&num("2/5")), s11, 16).unwrap();
    assert!(r.all_hold());
    assert_eq!(r.value, Some(q(3, 8)));
    assert_eq!(r.image, ImageClass::DyadicRational);

    let r = classification_correspondence(&cf_expand(&num("sqrt(2)-1")), s11, 16).unwrap();
    assert!(r.all_hold(), "{:?}", r.checks);
    assert_eq!(r.blocks, BlockPeriod::Periodic { preperiod: 1, period: 4 });
    assert_eq!(r.value, Some(q(2, 5)));

    let stream = ContinuedFraction::stream(0, DigitStream::aperiodic((1..).map(BigInt::from)));
    let r = classification_correspondence(&stream, s11, 16).unwrap();
    assert!(r.all_hold());
    assert_eq!(r.image, ImageClass::Irrational);
    // Every truncation is still a finite group.
    assert!(r.k0.iter().all(|(_, g)| g.is_torsion()));

    assert!(classification_correspondence(&stream, SurfaceData::new(2, 0).unwrap(), 16).is_err());
}

#[test]
fn jacobi_perron_convergence() {
    let max_err = |e: &qmark::jacobiperron::JPExpansion, theta: &[ExactNumber], k: usize| {
        let c = jp_convergent(e, k).unwrap();
        c.iter()
            .zip(theta)
            .map(|(c, t)| (num_traits::ToPrimitive::to_f64(c).unwrap() - t.to_f64()).abs())
            .fold(0.0, f64::max)
    };
    let vectors = [
        ["sqrt(2)-1", "sqrt(3)-1"],
        ["(sqrt(5)-1)/2", "sqrt(7)-2"],
        ["sqrt(3)-1", "sqrt(5)-2"],
        ["sqrt(6)-2", "sqrt(2)-1"],
    ];
    for v in vectors {
        let theta: Vec<ExactNumber> = v.iter().map(|s| num(s)).collect();
        let e = jp_expand(&theta, 12).unwrap();
        let errs: Vec<f64> = (2..=12).map(|k| max_err(&e, &theta, k)).collect();
        assert!(errs[10] < errs[0] * 1e-3, "{v:?}: {errs:?}");
    }
    // The max-norm error is not monotone: it goes up between k = 4 and 5 here.
    let theta = [num("sqrt(2)-1"), num("sqrt(3)-1")];
    let e = jp_expand(&theta, 12).unwrap();
    assert!(max_err(&e, &theta, 5) > max_err(&e, &theta, 4));
}
