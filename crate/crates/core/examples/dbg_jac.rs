use fourvortex::config::Vorticities;
use fourvortex::systems::build_collinear;

fn main() {
    let g = Vorticities::new([1.0, 1.0, 1.0, -1.0]).unwrap();
    let sys = build_collinear(&g);
    for (i, p) in sys.polys().iter().enumerate() {
        println!("eq {i}:");
        for (exps, c) in p.terms() {
            println!("  {:?} {:+.6e} {:+.6e}i", exps, c.re, c.im);
        }
    }
}
