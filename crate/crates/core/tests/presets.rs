use qjfrac::arith::qr;
use qjfrac::jfraction::{
    convergent_coefficients, convergents, pochhammer_ab, pochhammer_c, table1_preset, PochhammerParams,
    PresetParams, Table1Row,
};
use qjfrac::oracles::table1_target;

fn params() -> PresetParams {
    PresetParams {
        a: qr("2/5"),
        b: qr("3/7"),
        x: qr("1/3"),
    }
}

fn mismatches(row: Table1Row, p: &PresetParams, h: usize, window: usize) -> Vec<usize> {
    let spec = table1_preset(row, p).unwrap();
    let j = convergent_coefficients(&convergents(&spec, h).unwrap(), window);
    (0..window)
        .filter(|&n| j.coeffs()[n] != table1_target(row, &p.a, &p.b, &p.x, n).unwrap())
        .collect()
}

#[test]
fn every_row_matches_its_target_below_depth() {
    for row in Table1Row::BUILDABLE {
        for h in 1..=5 {
            let bad = mismatches(row, &params(), h, h);
            assert!(bad.is_empty(), "{row} h={h}: {bad:?}");
        }
    }
}

#[test]
fn rows_with_second_parameter_q_dependent() {
    let p = PresetParams {
        a: qr("q^2"),
        b: qr("q/2"),
        x: qr("2*q"),
    };
    for row in Table1Row::BUILDABLE {
        assert!(mismatches(row, &p, 4, 4).is_empty(), "{row}");
    }
}

#[test]
fn ratio_row_is_the_pochhammer_family() {
    let p = params();
    let spec = table1_preset(Table1Row::PochhammerRatio, &p).unwrap();
    let pp = PochhammerParams::new(p.a.clone(), p.b.clone()).unwrap();
    for i in 1..=5 {
        assert_eq!(spec.c(i).unwrap(), pochhammer_c(&pp, i).unwrap());
        if i >= 2 {
            assert_eq!(spec.ab(i).unwrap(), pochhammer_ab(&pp, i).unwrap());
        }
    }
}

#[test]
fn finite_products_are_reproduced_exactly() {
    // (a;q)_n and (x q^-n; q)_n vanish past no finite n, but their fractions
    // agree on the whole doubled window
    for row in [Table1Row::PochhammerA, Table1Row::PochhammerZqn] {
        for h in 1..=4 {
            assert!(mismatches(row, &params(), h, 2 * h).is_empty(), "{row} h={h}");
        }
    }
}

#[test]
fn pochhammer_a_printed_ab() {
    let p = PresetParams {
        a: qr("2/5"),
        ..params()
    };
    let s = table1_preset(Table1Row::PochhammerA, &p).unwrap();
    assert_eq!(s.c(1).unwrap(), qr("3/5"));
    assert_eq!(s.ab(3).unwrap(), qr("2/5*q^2*(2/5*q-1)*(q^2-1)"));
}
