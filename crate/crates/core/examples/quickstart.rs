//! Square a Jordan block exactly, then check the predicted spectrum of the
//! result against a recomputation.

use intertwine::{
    apply_function_jet, spectrum_of_spec, verify_mapping, Exact, HoloFunction, JordanBlock,
    JordanSpec, Scalar, Tolerances,
};

fn main() -> intertwine::Result<()> {
    let tol = Tolerances::default();
    let spec = JordanSpec::new(vec![JordanBlock::new("l", Exact::from_ratio(0, 1), 3)]);
    let square = HoloFunction::monomial(2);

    let fa = apply_function_jet(&square, &spec)?;
    for row in fa.rows() {
        let cells: Vec<String> = row.iter().map(|z| z.re.to_string()).collect();
        println!("[{}]", cells.join(" "));
    }
    for p in spectrum_of_spec(&spec, &tol)?.points() {
        println!("a: {p}");
    }

    let report = verify_mapping(&square, &spec, &tol)?;
    for p in report.predicted.points() {
        println!("predicted for a^2: {p}");
    }
    println!("matches recomputed spectrum: {}", report.matches);
    Ok(())
}
