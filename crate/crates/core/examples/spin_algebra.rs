//! Spin operators of the one-excitation sector and their commutators.

use osg_rabi::entanglement::spin::{commutator, dressed_states, mu_operators};

fn main() {
    let [mx, my, mz] = mu_operators();
    let i = num_complex::Complex64::i();
    let check = |a, b, c: &osg_rabi::entanglement::Matrix4, label: &str| {
        let lhs = commutator(a, b);
        let err = (0..4)
            .flat_map(|r| (0..4).map(move |s| (r, s)))
            .map(|(r, s)| (lhs[r][s] - i * c[r][s]).norm())
            .fold(0.0, f64::max);
        println!("{label}: max entry error {err:e}");
    };
    check(&mx, &my, &mz, "[μx, μy] = iμz");
    check(&my, &mz, &mx, "[μy, μz] = iμx");
    check(&mz, &mx, &my, "[μz, μx] = iμy");
    for (k, v) in dressed_states().iter().enumerate() {
        println!("dressed state {k}: {v:?}");
    }
}
