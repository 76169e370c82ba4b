use qveto_core::election::{
    fidelity_vs_ideal, noise_sweep, run_election, simulate_round, strength_grid, ElectionConfig,
    Payload, ProtocolKind, Termination,
};
use qveto_core::noise::{ChannelKind, NoiseModel, Placement};
use qveto_core::protocols::{
    protocol_a_plan, protocol_a_run, protocol_b_run, Decision, Party, VoteVector,
};
use qveto_core::reference::Table;

const KINDS: [ChannelKind; 4] = [
    ChannelKind::AmplitudeDamping,
    ChannelKind::PhaseDamping,
    ChannelKind::Depolarizing,
    ChannelKind::BitFlip,
];

fn votes(s: &str) -> VoteVector {
    s.parse().unwrap()
}

fn hop(kind: ChannelKind, strength: f64) -> NoiseModel {
    NoiseModel::single(kind.channel(strength).unwrap(), Placement::Hop)
}

#[test]
fn identity_noise_rejects_three_vetoes_at_once() {
    let report = run_election(&ElectionConfig::new(ProtocolKind::A, 4), &votes("1101")).unwrap();
    assert_eq!(report.decision, Decision::Reject);
    assert_eq!(report.iterations().len(), 1);
    let it = &report.iterations()[0];
    assert_eq!(it.modal_outcome, "10");
    assert_eq!(it.counts.count("10"), 8192);
    assert!((it.success_probability - 1.0).abs() < 1e-12);
    assert!((it.fidelity - 1.0).abs() < 1e-9);
}

#[test]
fn identity_noise_cluster_reads_all_zero() {
    let report = run_election(
        &ElectionConfig::new(ProtocolKind::BCluster, 4),
        &votes("0000"),
    )
    .unwrap();
    assert_eq!(report.iterations()[0].modal_outcome, "0000");
    assert_eq!(report.decision, Decision::Unanimous);
    assert!((report.fidelity_vs_ideal()[0] - 1.0).abs() < 1e-9);
}

#[test]
fn identity_noise_reproduces_pure_results() {
    for v in VoteVector::all(4).unwrap() {
        let a = run_election(&ElectionConfig::new(ProtocolKind::A, 4).with_shots(64), &v).unwrap();
        let (decision, rounds) = protocol_a_run(&v).unwrap();
        assert_eq!(a.decision, decision);
        let modal: Vec<&str> = a
            .iterations()
            .iter()
            .map(|i| i.modal_outcome.as_str())
            .collect();
        let pure: Vec<&str> = rounds.iter().map(|r| r.readout.as_str()).collect();
        assert_eq!(modal, pure, "{v}");
        for kind in [ProtocolKind::BGhz, ProtocolKind::BCluster] {
            let b = run_election(&ElectionConfig::new(kind, 4).with_shots(64), &v).unwrap();
            let pure = protocol_b_run(&v, kind.variant().unwrap()).unwrap();
            assert_eq!(b.iterations()[0].modal_outcome, pure.readout);
            assert_eq!(b.decision, pure.decision);
            assert!((b.iterations()[0].fidelity - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn identity_noise_matches_every_reference_row() {
    for table in [Table::Bell, Table::Cluster, Table::Ghz] {
        for row in table.rows() {
            let kind = match table {
                Table::Bell => ProtocolKind::A,
                Table::Cluster => ProtocolKind::BCluster,
                Table::Ghz => ProtocolKind::BGhz,
            };
            let config = ElectionConfig::new(kind, 4).with_shots(16);
            let report = run_election(&config, &row.vote_vector()).unwrap();
            let it = &report.iterations()[row.iteration.unwrap_or(1) as usize - 1];
            assert_eq!(it.modal_outcome, row.readout, "{table:?} case {}", row.case);
            assert!((it.fidelity - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn same_seed_same_report() {
    let config = ElectionConfig::new(ProtocolKind::BGhz, 4)
        .with_seed(99)
        .with_noise(hop(ChannelKind::Depolarizing, 0.2))
        .with_repeats(3);
    let a = run_election(&config, &votes("1010")).unwrap();
    let b = run_election(&config, &votes("1010")).unwrap();
    assert_eq!(a, b);
    assert_eq!(
        a.runs.iter().map(|r| r.seed).collect::<Vec<_>>(),
        vec![99, 100, 101]
    );
    let c = run_election(&config.clone().with_seed(5), &votes("1010")).unwrap();
    assert_ne!(
        a.runs[0].iterations[0].counts,
        c.runs[0].iterations[0].counts
    );
}

#[test]
fn transcript_follows_the_voter_ring() {
    let ring: Vec<(Party, Party)> = std::iter::once((Party::Authority, Party::Voter(1)))
        .chain((1..4).map(|i| (Party::Voter(i), Party::Voter(i + 1))))
        .chain(std::iter::once((Party::Voter(4), Party::Authority)))
        .collect();
    for kind in ProtocolKind::ALL {
        for v in VoteVector::all(4).unwrap() {
            let report = run_election(&ElectionConfig::new(kind, 4).with_shots(8), &v).unwrap();
            let transcript = report.transcript();
            assert_eq!(transcript.readout_counts.len(), report.iterations().len());
            for it in report.iterations() {
                assert_eq!(transcript.hops(it.iteration), ring, "{kind} {v}");
                let announced = transcript
                    .events
                    .iter()
                    .filter(|e| e.iteration == it.iteration)
                    .filter(|e| matches!(e.payload, Payload::ClassicalAnnouncement { .. }))
                    .count();
                assert_eq!(announced, 4);
            }
        }
    }
}

#[test]
fn full_dephasing_leaves_a_classical_mixture() {
    let plan = protocol_a_plan(&votes("0000"), 0);
    let noisy = simulate_round(&plan, &hop(ChannelKind::PhaseDamping, 1.0)).unwrap();
    let ideal = plan.run_pure().unwrap().pre_measure;
    let f = fidelity_vs_ideal(&noisy.pre_measure, &ideal).unwrap();
    assert!(f < 0.6);
    assert!((f - 0.5).abs() < 1e-9);
}

#[test]
fn zero_strength_keeps_fidelity_one() {
    for kind in KINDS {
        for protocol in ProtocolKind::ALL {
            let rows = noise_sweep(
                protocol,
                &votes("1100"),
                kind,
                &[0.0],
                Placement::Hop,
                1,
                128,
            )
            .unwrap();
            assert_eq!(rows.len(), 1);
            assert!((rows[0].fidelity - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn fidelity_never_improves_with_noise() {
    let grid = strength_grid(0.0, 0.5, 0.05).unwrap();
    for kind in KINDS {
        for protocol in ProtocolKind::ALL {
            for v in ["0000", "1000", "1100", "1110", "1111"] {
                let rows =
                    noise_sweep(protocol, &votes(v), kind, &grid, Placement::Hop, 3, 64).unwrap();
                for w in rows.windows(2) {
                    assert!(
                        w[1].fidelity <= w[0].fidelity + 1e-9,
                        "{kind} {protocol} {v}: {} -> {}",
                        w[0].fidelity,
                        w[1].fidelity
                    );
                }
            }
        }
    }
}

#[test]
fn gate_placed_damping_can_revive_overlap() {
    // amplitude damping pushes towards |0…0⟩, which overlaps the GHZ state,
    // so gate-placed damping is not monotone at large strengths
    let grid = [0.4, 0.45];
    let rows = noise_sweep(
        ProtocolKind::BGhz,
        &votes("0000"),
        ChannelKind::AmplitudeDamping,
        &grid,
        Placement::Gate,
        0,
        16,
    )
    .unwrap();
    assert!(rows[1].fidelity > rows[0].fidelity);
}

#[test]
fn bell_scheme_tolerates_dephasing_best() {
    let grid = strength_grid(0.0, 0.5, 0.05).unwrap();
    for v in VoteVector::all(4).unwrap() {
        let sweep = |p| {
            noise_sweep(
                p,
                &v,
                ChannelKind::PhaseDamping,
                &grid,
                Placement::Hop,
                0,
                16,
            )
            .unwrap()
        };
        let (a, g, c) = (
            sweep(ProtocolKind::A),
            sweep(ProtocolKind::BGhz),
            sweep(ProtocolKind::BCluster),
        );
        for i in 0..grid.len() {
            assert!(a[i].fidelity + 1e-9 >= g[i].fidelity, "{v} at {}", grid[i]);
            assert!(g[i].fidelity + 1e-9 >= c[i].fidelity, "{v} at {}", grid[i]);
        }
    }
}

#[test]
fn weak_noise_keeps_the_noiseless_readout() {
    for kind in KINDS {
        for protocol in ProtocolKind::ALL {
            for v in VoteVector::all(4).unwrap() {
                let ideal =
                    run_election(&ElectionConfig::new(protocol, 4).with_shots(16), &v).unwrap();
                let config = ElectionConfig::new(protocol, 4)
                    .with_seed(11)
                    .with_noise(hop(kind, 0.01))
                    .with_termination(Termination::FollowIdeal);
                let noisy = run_election(&config, &v).unwrap();
                let a: Vec<&str> = ideal
                    .iterations()
                    .iter()
                    .map(|i| i.modal_outcome.as_str())
                    .collect();
                let b: Vec<&str> = noisy
                    .iterations()
                    .iter()
                    .map(|i| i.modal_outcome.as_str())
                    .collect();
                assert_eq!(a, b, "{kind} {protocol} {v}");
            }
        }
    }
}

#[test]
fn success_probability_is_a_probability() {
    for kind in KINDS {
        let config = ElectionConfig::new(ProtocolKind::BCluster, 4).with_noise(hop(kind, 0.7));
        let report = run_election(&config, &votes("0110")).unwrap();
        let p = report.iterations()[0].success_probability;
        assert!((0.0..=1.0).contains(&p));
    }
}

#[test]
fn invalid_configurations_are_rejected() {
    let v = votes("1010");
    assert!(run_election(&ElectionConfig::new(ProtocolKind::A, 4).with_shots(0), &v).is_err());
    assert!(run_election(&ElectionConfig::new(ProtocolKind::A, 5), &v).is_err());
    assert!(run_election(&ElectionConfig::new(ProtocolKind::BGhz, 3), &votes("101")).is_err());
    assert!(run_election(&ElectionConfig::new(ProtocolKind::A, 4).with_repeats(0), &v).is_err());
}
