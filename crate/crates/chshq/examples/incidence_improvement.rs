//! Point-line incidences: counting, the four configuration classes, and the
//! strictly-improving moves that drive any regime-valid configuration to
//! the optimum k + n(n-1)/2.
//!
//! Run with: cargo run --example incidence_improvement

use chshq::field::FieldSpec;
use chshq::incidence::{
    classify, count_incidences, improve, incidence_optimum, on_line, optimize, Configuration,
    IncidenceError, Line, Point,
};

fn cfg(spec: &FieldSpec, pts: &[(u64, u64)], lns: &[(u64, u64)]) -> Configuration {
    let points = pts
        .iter()
        .map(|&(x, y)| Point::new(spec.element(x).unwrap(), spec.element(y).unwrap()).unwrap())
        .collect();
    let lines = lns
        .iter()
        .map(|&(s, o)| Line::new(spec.element(s).unwrap(), spec.element(o).unwrap()).unwrap())
        .collect();
    Configuration::new(spec.clone(), points, lines).unwrap()
}

fn show(label: &str, c: &Configuration) {
    let class = match classify(c) {
        Ok(cl) => cl.label().to_string(),
        Err(e) => format!("({e})"),
    };
    println!(
        "{label}: |P|={}, |L|={}, incidences={}, class={class}",
        c.n(),
        c.k(),
        count_incidences(c)
    );
}

fn main() {
    let f5 = FieldSpec::new(5).unwrap();

    println!("=== Incidence basics over GF(5) ===");
    let p = Point::new(f5.element(2).unwrap(), f5.element(4).unwrap()).unwrap();
    let l = Line::new(f5.element(3).unwrap(), f5.element(3).unwrap()).unwrap();
    println!("(2,4) on y = 3x + 3? {} (3*2+3 = 9 = 4)", on_line(&p, &l).unwrap());
    println!(
        "closed-form optimum I(n=3, k=5, q=5) = {}",
        incidence_optimum(3, 5, 5).unwrap()
    );
    println!();

    println!("=== One improvement step per class ===");
    // Class 1: a line with no point.
    let c1 = cfg(&FieldSpec::new(3).unwrap(), &[(0, 0)], &[(0, 1)]);
    show("class-1 start", &c1);
    show("after improve", &improve(&c1).unwrap());
    println!();

    // Class 2: every line hit, the two points not joined.
    let c2 = cfg(&f5, &[(0, 0), (1, 1)], &[(0, 0), (0, 1)]);
    show("class-2 start", &c2);
    show("after improve", &improve(&c2).unwrap());
    println!();

    // Class 3: three collinear points.
    let f7 = FieldSpec::new(7).unwrap();
    let c3 = cfg(
        &f7,
        &[(0, 0), (1, 1), (2, 2)],
        &[(1, 0), (0, 0), (0, 1), (0, 2), (3, 0), (3, 5)],
    );
    show("class-3 start", &c3);
    show("after improve", &improve(&c3).unwrap());
    println!();

    println!("=== Iterating to the fixpoint ===");
    // A vertical point pair can never be joined by a slope-offset line; the
    // relocation move still reaches the optimum.
    let stuck = cfg(&f5, &[(0, 0), (0, 1)], &[(0, 0), (1, 0), (2, 0), (0, 1), (1, 1)]);
    show("vertical-pair start", &stuck);
    let (best, steps) = optimize(&stuck).unwrap();
    show(&format!("after {steps} step(s)"), &best);
    println!(
        "reached the closed form k + n(n-1)/2 = {}",
        incidence_optimum(2, 5, 5).unwrap()
    );
    println!();

    println!("=== Class 4 refuses to improve ===");
    let done = cfg(
        &FieldSpec::new(3).unwrap(),
        &[(0, 0), (1, 1)],
        &[(1, 0), (0, 0), (2, 0)],
    );
    show("optimal", &done);
    match improve(&done) {
        Err(IncidenceError::NotImprovable) => println!("improve: NotImprovable, as expected"),
        other => println!("unexpected: {other:?}"),
    }
}
