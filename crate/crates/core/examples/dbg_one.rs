use fourvortex::config::Vorticities;
use fourvortex::homotopy::{solve, TrackOptions};
use fourvortex::systems::build_collinear;

fn main() {
    let g = Vorticities::new([1.0, 1.0, 1.0, -1.0]).unwrap();
    let sys = build_collinear(&g);
    let set = solve(&sys, &TrackOptions::default()).unwrap();
    eprintln!(
        "paths={} sols={} inf={} failed={} warning={:?}",
        set.n_paths,
        set.solutions.len(),
        set.n_at_infinity,
        set.n_failed,
        set.warning
    );
    for s in &set.solutions {
        eprintln!(
            "mult={} res={:.2e} cond={:.2e} |x|={:.4e} x={:?}",
            s.multiplicity,
            s.residual,
            s.condition,
            s.point.iter().map(|v| v.norm()).fold(0.0f64, f64::max),
            s.point.iter().map(|v| (v.re, v.im)).collect::<Vec<_>>()
        );
    }
}
