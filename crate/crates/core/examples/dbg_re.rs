use fourvortex::config::Vorticities;
use fourvortex::homotopy::{solve, TrackOptions};
use fourvortex::systems::{build_relative_equilibrium, LambdaSign};

fn main() {
    let g = Vorticities::new([-2.0, 1.0, 1.0, 1.0]).unwrap();
    let opts = TrackOptions::default();
    for sign in [LambdaSign::Plus, LambdaSign::Minus] {
        let sys = build_relative_equilibrium(&g, sign);
        let t0 = std::time::Instant::now();
        let set = solve(&sys, &opts).unwrap();
        let dt = t0.elapsed().as_secs_f64();
        let mult_tot: usize = set.solutions.iter().map(|s| s.multiplicity).sum();
        eprintln!(
            "sign={sign:?} time={dt:.2}s sols={} mult_tot={mult_tot} inf={} failed={}",
            set.solutions.len(),
            set.n_at_infinity,
            set.n_failed,
        );
    }
}
