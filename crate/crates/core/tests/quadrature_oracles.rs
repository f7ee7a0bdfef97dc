//! Closed forms checked against independent quadrature.

use std::f64::consts::PI;

use mehler_core::heisenberg::ConfinedPair;
use mehler_core::inversion::{invert_widths, WidthPair};
use mehler_core::oracle::{
    fourier_transform_2d, inverse_square_ground, nystrom_eigs, rdm_spectrum_from_wavefunction,
    QuadratureGrid,
};
use mehler_core::spectral::{form_factor, hermite_orbitals, MehlerSpectrum};

fn params(lambda: f64) -> mehler_core::GaussianModelParams {
    ConfinedPair::new(1.0, lambda).unwrap().model_params()
}

#[test]
fn hermite_functions_are_orthonormal() {
    // The largest orbital here turns around near |u| = 9; the Gaussian tail is
    // below 1e-20 by u = 14, and the rule converges spectrally.
    let grid = QuadratureGrid::gauss_legendre(400, 14.0).unwrap();
    let max = 40;
    let mut gram = vec![vec![0.0; max + 1]; max + 1];
    for (&x, &w) in grid.nodes().iter().zip(grid.weights()) {
        let phi = hermite_orbitals(max, 1.0, x).unwrap();
        for (row, a) in gram.iter_mut().zip(&phi) {
            for (g, b) in row.iter_mut().zip(&phi) {
                *g += w * a * b;
            }
        }
    }
    for (m, row) in gram.iter().enumerate() {
        for (n, &g) in row.iter().enumerate() {
            let expected = if m == n { 1.0 } else { 0.0 };
            assert!((g - expected).abs() <= 1e-12, "<{m}|{n}> = {g}");
        }
    }
}

#[test]
fn mehler_expansions_are_normalized() {
    for (omega_bar, z) in [(1.0, 0.2), (0.3, 0.7), (5.0, 0.5)] {
        let s = MehlerSpectrum::new(omega_bar, z).unwrap();
        let grid = QuadratureGrid::for_decay_rate(300, s.omega_s()).unwrap();
        let norm = grid.integrate(|x| s.density_position(x));
        assert!((norm - 1.0).abs() < 1e-10, "position norm {norm}");
        let grid = QuadratureGrid::for_decay_rate(300, 1.0 / s.omega_cap_s()).unwrap();
        let norm = grid.integrate(|k| s.density_momentum(k));
        assert!((norm - 1.0).abs() < 1e-10, "momentum norm {norm}");
    }
}

#[test]
fn form_factor_is_fourier_transform_of_density() {
    for omega in [0.5, 1.0, 3.0] {
        let grid = QuadratureGrid::for_decay_rate(200, omega).unwrap();
        let density = |x: f64| (omega / PI).sqrt() * (-omega * x * x).exp();
        for k in [0.0, 0.7, 2.0, 4.5] {
            let numeric = grid.integrate(|x| density(x) * (k * x).cos()) / (2.0 * PI).sqrt();
            assert!((numeric - form_factor(omega, k).unwrap()).abs() <= 1e-9);
        }
    }
}

#[test]
fn marginals_normalization_and_moments() {
    for lambda in [-0.4, 0.0, 1.5, 9.0] {
        let p = params(lambda);
        let (n, f) = p.marginal_densities();
        let gx = QuadratureGrid::for_decay_rate(200, p.omega_s()).unwrap();
        let gk = QuadratureGrid::for_decay_rate(200, 1.0 / p.omega_cap_s()).unwrap();
        assert!((gx.integrate(&n) - 1.0).abs() <= 1e-10);
        assert!((gk.integrate(&f) - 1.0).abs() <= 1e-10);
        let x2 = gx.integrate(|x| x * x * n(x));
        let k2 = gk.integrate(|k| k * k * f(k));
        assert!((x2 - 0.5 / p.omega_s()).abs() <= 1e-10 * x2.max(1.0));
        assert!((k2 - 0.5 * p.omega_cap_s()).abs() <= 1e-10 * k2.max(1.0));
        assert!((n(0.0) - (p.omega_s() / PI).sqrt()).abs() < 1e-15);
    }
}

#[test]
fn marginals_of_exact_two_body_state() {
    // Integrate |Psi|^2 over one coordinate in x, and the momentum second
    // moment from the normal-mode kinetic energies.
    let pair = ConfinedPair::new(1.0, 1.5).unwrap();
    let psi = pair.wavefunction();
    let p = pair.model_params();
    let grid = QuadratureGrid::for_decay_rate(200, p.omega_s()).unwrap();
    for x in [-1.3, 0.0, 0.4, 2.2] {
        let n = grid.integrate(|y| psi(x, y).powi(2));
        assert!((n - p.density_position(x)).abs() <= 1e-12);
    }
    // <p1^2> = -int Psi d^2Psi/dx1^2, by central differences on the exact state.
    let h = 1e-4;
    let k2 = grid.integrate_2d(|x, y| {
        let lap = (psi(x + h, y) - 2.0 * psi(x, y) + psi(x - h, y)) / (h * h);
        -psi(x, y) * lap
    });
    assert!((k2 - 0.5 * p.omega_cap_s()).abs() < 1e-6, "<k^2> = {k2}");
    assert!((0.5 * p.omega_cap_s() - 0.75).abs() < 1e-15);
}

#[test]
fn kinetic_energy_functionals_by_quadrature() {
    for (omega_s, omega_cap_s) in [(1.0, 1.0), (4.0 / 3.0, 1.5), (0.3, 2.0)] {
        let w = WidthPair::new(omega_s, omega_cap_s).unwrap();
        let k = w.kinetic_energies();
        let gx = QuadratureGrid::for_decay_rate(200, omega_s).unwrap();
        // sqrt(N) = phi_s, derivative -omega_s x phi_s.
        let phi = |x: f64| (omega_s / PI).powf(0.25) * (-0.5 * omega_s * x * x).exp();
        let k1 = 0.5 * gx.integrate(|x| (omega_s * x * phi(x)).powi(2));
        let gk = QuadratureGrid::for_decay_rate(200, 1.0 / omega_cap_s).unwrap();
        let f = |q: f64| (PI * omega_cap_s).sqrt().recip() * (-q * q / omega_cap_s).exp();
        let k2 = gk.integrate(|q| 0.5 * q * q * f(q));
        assert!((k1 - k.k1).abs() <= 1e-10);
        assert!((k2 - k.k2).abs() <= 1e-10);
    }
}

#[test]
fn nystrom_spectrum_is_geometric_at_lambda_one_and_a_half() {
    let p = params(1.5);
    let z = invert_widths(&p.widths()).unwrap().z();
    assert!((z - 0.029_437_3).abs() < 1e-7);

    let gx = QuadratureGrid::for_decay_rate(200, p.omega_s()).unwrap();
    let pos = nystrom_eigs(p.position_kernel(), &gx, 11).unwrap();
    for dev in pos.deviations_from_geometric(z) {
        assert!(dev <= 1e-9, "{dev}");
    }

    let gk = QuadratureGrid::for_decay_rate(200, 1.0 / p.omega_cap_s()).unwrap();
    let mom = nystrom_eigs(p.momentum_kernel(), &gk, 11).unwrap();
    for (a, b) in pos.eigenvalues.iter().zip(&mom.eigenvalues) {
        assert!((a - b).abs() <= 1e-9);
    }
    assert!((pos.trace - 1.0).abs() < 1e-8);
    assert!((pos.purity_numeric - (8.0f64 / 9.0).sqrt()).abs() < 1e-10);
}

#[test]
fn wavefunction_route_matches_kernel_route() {
    for lambda in [0.0, 1.5] {
        let pair = ConfinedPair::new(1.0, lambda).unwrap();
        let p = pair.model_params();
        let grid = QuadratureGrid::for_decay_rate(200, p.omega_s()).unwrap();
        let from_psi = rdm_spectrum_from_wavefunction(pair.wavefunction(), &grid, 8).unwrap();
        let from_kernel = nystrom_eigs(p.position_kernel(), &grid, 8).unwrap();
        for (a, b) in from_psi.eigenvalues.iter().zip(&from_kernel.eigenvalues) {
            assert!((a - b).abs() <= 1e-10);
        }
        if lambda == 0.0 {
            assert!((from_psi.purity_numeric - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn nystrom_eigenvalues_are_grid_converged() {
    let p = params(10.0);
    let coarse = nystrom_eigs(
        p.position_kernel(),
        &QuadratureGrid::for_decay_rate(150, p.omega_s()).unwrap(),
        8,
    )
    .unwrap();
    let fine = nystrom_eigs(
        p.position_kernel(),
        &QuadratureGrid::for_decay_rate(300, p.omega_s()).unwrap(),
        8,
    )
    .unwrap();
    for (a, b) in coarse.eigenvalues.iter().zip(&fine.eigenvalues) {
        assert!((a - b).abs() <= 1e-9);
    }
}

#[test]
fn fourier_transform_of_position_kernel() {
    let p = params(1.5);
    let grid = QuadratureGrid::for_decay_rate(200, p.omega_s()).unwrap();
    let origin = fourier_transform_2d(p.position_kernel(), &grid, 0.0, 0.0).unwrap();
    assert!((origin - (PI * p.omega_cap_s()).sqrt().recip()).abs() <= 1e-10);

    let ks = [-2.0, -1.0, 0.0, 0.5, 1.7];
    let mut worst = 0.0_f64;
    for &k1 in &ks {
        for &k2 in &ks {
            let numeric = fourier_transform_2d(p.position_kernel(), &grid, k1, k2).unwrap();
            worst = worst.max((numeric - p.gamma_momentum(k1, k2).unwrap()).abs());
        }
    }
    assert!(worst <= 1e-8, "max deviation {worst}");
}

#[test]
fn fourier_transform_of_product_gaussian() {
    // D = 0: each coordinate transforms independently.
    let p = mehler_core::GaussianModelParams::new(0.8, 0.0).unwrap();
    let grid = QuadratureGrid::for_decay_rate(160, 0.8).unwrap();
    let chi = |k: f64| (1.0 / (PI * 0.8)).powf(0.25) * (-0.5 * k * k / 0.8).exp();
    for (k1, k2) in [(0.0, 0.0), (1.0, -0.5), (2.0, 2.0)] {
        let v = fourier_transform_2d(p.position_kernel(), &grid, k1, k2).unwrap();
        assert!((v - chi(k1) * chi(k2)).abs() < 1e-10);
    }
}

#[test]
fn truncated_fourier_domain_is_detected() {
    // Shifted Gaussian cut off on one side leaves an imaginary part.
    let grid = QuadratureGrid::gauss_legendre(100, 2.0).unwrap();
    let kernel = |a: f64, b: f64| (-(a - 1.5).powi(2) - (b - 1.5).powi(2)).exp();
    assert!(fourier_transform_2d(kernel, &grid, 1.0, 0.0).is_err());
}

#[test]
fn inverse_square_energy_functional() {
    // <H_rel> = int [psi'^2 / 2 + (w^2 r^2 / 2 + Lambda / (2 r^2)) psi^2] dr
    // with psi' = (a / r - w r) psi; centre of mass adds w / 2. Integrated in
    // t = r^{1/4} so the r^{2a - 2} behaviour at the origin is smoothed out.
    for (w, lam) in [(1.0, 2.0), (1.0, 0.3), (0.6, 50.0), (1.0, 1e4)] {
        let g = inverse_square_ground(w, lam).unwrap();
        let rel = g.relative_wavefunction();
        let a = g.a_exponent;
        let reach = (a / w).sqrt() + 12.0 / w.sqrt();
        let density = |r: f64| {
            let psi = rel(r);
            let dpsi = (a / r - w * r) * psi;
            0.5 * dpsi * dpsi + (0.5 * w * w * r * r + 0.5 * lam / (r * r)) * psi * psi
        };
        let t_max = reach.powf(0.25);
        let half = QuadratureGrid::gauss_legendre(600, 0.5 * t_max).unwrap();
        let e_rel = 2.0
            * half.integrate(|s| {
                let t = s + 0.5 * t_max;
                4.0 * t.powi(3) * density(t.powi(4))
            });
        let e = e_rel + 0.5 * w;
        assert!(
            (e - g.energy).abs() <= 1e-8 * g.energy,
            "Lambda {lam}: {e} vs {}",
            g.energy
        );
    }
}

#[test]
fn inverse_square_strong_coupling_spectrum() {
    let g = inverse_square_ground(1.0, 1e4).unwrap();
    let res = g.oracle(400, 6).unwrap();
    assert!((res.trace - 1.0).abs() < 1e-8);
    // Localized pieces pair the occupations.
    assert!((res.eigenvalues[0] - res.eigenvalues[1]).abs() < 1e-8);
    // Limit purity sqrt(2)/3; the complement is the 0.528 linear entropy.
    assert!((res.purity_numeric - 2f64.sqrt() / 3.0).abs() < 1e-3);
    assert!((1.0 - res.purity_numeric - 0.528).abs() < 0.005);
}
