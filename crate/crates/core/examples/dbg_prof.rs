use fourvortex::config::Vorticities;
use fourvortex::homotopy::{make_start_system, track_path, TrackOptions};
use fourvortex::systems::{build_relative_equilibrium, LambdaSign};

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let only: Option<usize> = std::env::args().nth(2).and_then(|s| s.parse().ok());
    let g = Vorticities::new([-2.0, 1.0, 1.0, 1.0]).unwrap();
    let sys = build_relative_equilibrium(&g, LambdaSign::Plus);
    let mut opts = TrackOptions::default();
    opts.seed = seed;
    let (start, points) = make_start_system(&sys.degrees(), seed).unwrap();
    for (i, x0) in points.iter().enumerate() {
        if let Some(j) = only {
            if i != j {
                continue;
            }
        }
        let p = track_path(&sys, &start, x0, &opts).unwrap();
        if only.is_some() || format!("{:?}", p.status) == "Failed" {
            eprintln!(
                "path {i}: {:?} t={:.10} res={:.2e} cond={:.2e} |x|={:.3e} newton={}",
                p.status,
                p.final_t,
                p.residual,
                p.condition_estimate,
                p.endpoint.iter().map(|v| v.norm()).fold(0.0f64, f64::max),
                p.newton_steps_total
            );
        }
    }
}
