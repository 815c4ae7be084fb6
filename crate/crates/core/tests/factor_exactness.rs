use daqc_core::compile::{compile_factor, total_z, trotterize_model, Architecture, CompileOptions};
use daqc_core::dense::exact_propagator;
use daqc_core::fermion::{split_terms, FactorKind, FermiHubbardParams, LadderParams, Model};
use daqc_core::pauli::{Pauli, PauliString, PauliSum};
use daqc_core::statevector::{random_product_state, run_schedule, schedule_unitary};

fn architectures(n: usize) -> Vec<Architecture> {
    vec![
        Architecture::linear(2 * n, 0.9).unwrap(),
        Architecture::ladder(n, 1.2, 0.7).unwrap(),
    ]
}

fn models(n: usize) -> Vec<Model> {
    vec![
        Model::FermiHubbard(FermiHubbardParams::new(n, 1.0, 1.0, 0.5).unwrap()),
        Model::FermiHubbard(FermiHubbardParams::new(n, 0.8, -2.3, 0.1).unwrap()),
    ]
}

#[test]
fn every_factor_matches_its_propagator() {
    for n in 2..=4 {
        for arch in architectures(n) {
            for model in models(n) {
                let factors = split_terms(&model.hamiltonian().unwrap()).unwrap();
                for kind in FactorKind::TROTTER_ORDER {
                    for t in [0.3, 1.0] {
                        let h = factors.get(kind);
                        let s =
                            compile_factor(&arch, kind, h, t, &CompileOptions::default()).unwrap();
                        let u = schedule_unitary(&s).unwrap();
                        let d = u.phase_distance(&exact_propagator(h, t).unwrap()).unwrap();
                        assert!(d <= 1e-10, "n={n} {} {kind:?} t={t}: {d:e}", arch.name());
                    }
                }
            }
        }
    }
}

#[test]
fn ladder_rung_hopping_compiles_exactly_on_ladder() {
    let model = Model::Ladder(LadderParams {
        n: 3,
        delta: 0.4,
        epsilon: 0.3,
        j_rung: 0.6,
        lambda: 0.5,
    });
    let arch = Architecture::ladder(3, 1.0, 0.8).unwrap();
    let factors = split_terms(&model.hamiltonian().unwrap()).unwrap();
    for kind in FactorKind::TROTTER_ORDER {
        let h = factors.get(kind);
        let s = compile_factor(&arch, kind, h, 0.7, &CompileOptions::default()).unwrap();
        let d = schedule_unitary(&s)
            .unwrap()
            .phase_distance(&exact_propagator(h, 0.7).unwrap())
            .unwrap();
        assert!(d <= 1e-10, "{kind:?}: {d:e}");
    }
}

fn parity(n_q: usize) -> PauliSum {
    let s = PauliString::from_axes(vec![Pauli::Z; n_q]);
    PauliSum::from_real_terms(n_q, [(1.0, s)]).unwrap()
}

#[test]
fn zz_and_z_factors_conserve_magnetization() {
    let model = Model::FermiHubbard(FermiHubbardParams::new(3, 1.0, 1.0, 0.5).unwrap());
    let factors = split_terms(&model.hamiltonian().unwrap()).unwrap();
    let mz = total_z(6);
    for arch in architectures(3) {
        for kind in [FactorKind::Z, FactorKind::Zz] {
            let s = compile_factor(
                &arch,
                kind,
                factors.get(kind),
                0.8,
                &CompileOptions::default(),
            )
            .unwrap();
            let psi = random_product_state(3, 6);
            let after = run_schedule(&psi, &s).unwrap();
            assert!(
                (psi.expectation(&mz).unwrap() - after.expectation(&mz).unwrap()).abs() <= 1e-12
            );
        }
    }
}

#[test]
fn trotter_schedules_conserve_parity_and_converge_in_magnetization() {
    let model = Model::FermiHubbard(FermiHubbardParams::new(3, 1.0, 1.0, 0.5).unwrap());
    let mz = total_z(6);
    let parity = parity(6);
    for arch in architectures(3) {
        for seed in 0..3 {
            let psi = random_product_state(seed, 6);
            let before = psi.expectation(&mz).unwrap();
            let mut drifts = Vec::new();
            for l in [4, 16, 64] {
                let s =
                    trotterize_model(&model, 2.0, l, &arch, &CompileOptions::default()).unwrap();
                let out = run_schedule(&psi, &s).unwrap();
                let p =
                    (out.expectation(&parity).unwrap() - psi.expectation(&parity).unwrap()).abs();
                assert!(p <= 1e-10);
                drifts.push((out.expectation(&mz).unwrap() - before).abs());
            }
            // XX and YY do not commute with total magnetization one at a time
            assert!(drifts[2] < drifts[0], "{drifts:?}");
        }
    }
}
