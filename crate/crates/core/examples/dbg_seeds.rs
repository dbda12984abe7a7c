use fourvortex::config::Vorticities;
use fourvortex::homotopy::{solve, TrackOptions};
use fourvortex::systems::build_collinear;

fn main() {
    let g = Vorticities::new([1.0, 2.0, 3.0, 4.0]).unwrap();
    let sys = build_collinear(&g);
    const SALT: u64 = 0xa076_1d64_78bd_642f;
    for seed in [0, SALT, SALT.wrapping_mul(2), SALT.wrapping_mul(3)] {
        let opts = TrackOptions { seed, ..TrackOptions::default() };
        let t0 = std::time::Instant::now();
        let set = solve(&sys, &opts).unwrap();
        let dt = t0.elapsed().as_secs_f64();
        let its: usize = set.path_results.iter().map(|p| p.newton_steps_total).sum();
        println!(
            "seed={seed} time={dt:.2}s sols={} mult_tot={} inf={} failed={} newton_total={its}",
            set.solutions.len(),
            set.solutions.iter().map(|s| s.multiplicity).sum::<usize>(),
            set.n_at_infinity,
            set.n_failed,
        );
    }
}
