//! Spectral radius, entropy and the two-of-three spectral test.

use sofic::catalog;
use sofic::spectral::{adjacency, entropy, spectral_radius, theorem1_check, SpectralOptions};

pub fn run_example() -> String {
    let mut out = String::new();
    for (name, a) in [("golden mean cover", catalog::golden_mean()), ("ambiguous golden mean", catalog::fig3())] {
        let r = spectral_radius(&adjacency(&a), SpectralOptions::default()).expect("converges");
        out += &format!("{name}: radius {:.9}, entropy {:.6}\n", r.radius, entropy(&a).expect("entropy"));
    }

    // An ambiguous presentation of X has log ρ > h(X); an unambiguous one
    // accepting X has log ρ = h(X).
    for (name, a, x) in [
        ("fig3 vs golden mean", catalog::fig3(), catalog::golden_mean()),
        ("neither vs full shift", catalog::fig2_right(), catalog::full_shift(&["0", "1"])),
    ] {
        let r = theorem1_check(&a, &x, 1e-9).expect("hypotheses hold");
        out += &format!(
            "{name}: unambiguous {}, accepts X {}, entropy matches {}, consistent {}\n",
            r.unambiguous, r.accepts_x, r.entropy_matches, r.consistent
        );
    }
    out
}

fn main() {
    print!("{}", run_example());
}
