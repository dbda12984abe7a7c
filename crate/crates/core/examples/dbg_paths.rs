use fourvortex::config::Vorticities;
use fourvortex::homotopy::{make_start_system, track_path, TrackOptions};
use fourvortex::systems::build_collinear;

fn main() {
    let g = Vorticities::new([1.0, 1.0, 1.0, -1.0]).unwrap();
    let sys = build_collinear(&g);
    let opts = TrackOptions::default();
    let (start, points) = make_start_system(&sys.degrees(), opts.seed).unwrap();
    for (i, x0) in points.iter().enumerate() {
        let p = track_path(&sys, &start, x0, &opts).unwrap();
        eprintln!(
            "path {i:2}: {:?} t={:.8} res={:.2e} cond={:.2e} |x|={:.4e}",
            p.status,
            p.final_t,
            p.residual,
            p.condition_estimate,
            p.endpoint.iter().map(|v| v.norm()).fold(0.0f64, f64::max),
        );
    }
}
