use proptest::prelude::*;
use qas_core::agents::*;
use qas_core::env::*;
use qas_core::qsim::{NoiseSpec, PureState};

fn bell_env() -> QasEnv {
    QasEnv::new(EnvConfig::new(PureState::bell())).unwrap()
}

#[test]
fn single_episode_gives_single_record() {
    for alg in [Algorithm::A2c, Algorithm::Ppo] {
        let mut trainer = Trainer::new(bell_env(), alg, AgentHyper::defaults_for(alg), 0).unwrap();
        let records = trainer.train(1).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].episode, 0);
        assert!(records[0].length >= 1 && records[0].length <= DEFAULT_MAX_STEPS);
    }
}

#[test]
fn zero_episodes_is_an_error() {
    let mut trainer = Trainer::new(bell_env(), Algorithm::Ppo, AgentHyper::ppo(), 0).unwrap();
    assert!(trainer.train(0).is_err());
}

#[test]
fn training_is_deterministic_per_seed() {
    for alg in [Algorithm::A2c, Algorithm::Ppo] {
        let run = |seed| {
            let hyper = AgentHyper {
                horizon: 50,
                ..AgentHyper::defaults_for(alg)
            };
            let mut trainer = Trainer::new(bell_env(), alg, hyper, seed).unwrap();
            (trainer.train(40).unwrap(), trainer.model().clone())
        };
        assert_eq!(run(3), run(3));
        assert_ne!(run(3).0, run(4).0);
    }
}

#[test]
fn records_respect_reward_structure() {
    let hyper = AgentHyper {
        horizon: 100,
        ..AgentHyper::ppo()
    };
    let mut trainer = Trainer::new(bell_env(), Algorithm::Ppo, hyper, 1).unwrap();
    let records = trainer.train(200).unwrap();
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r.episode, i);
        let penalties = -0.01 * r.length as f64;
        if r.final_fidelity >= DEFAULT_THRESHOLD {
            // success: F − 0.01 on the last step
            let expected = penalties + r.final_fidelity;
            assert!((r.episode_return - expected).abs() < 1e-9);
        } else {
            assert_eq!(r.length, DEFAULT_MAX_STEPS);
            assert!((r.episode_return - penalties).abs() < 1e-9);
        }
    }
    // PPO updates fire every 100 steps, so the loss field appears on some episodes only.
    let updates = records.iter().filter(|r| r.loss.is_some()).count();
    let steps: usize = records.iter().map(|r| r.length).sum();
    assert!(steps >= 200);
    assert!(updates >= 1 && updates <= steps / 100);
}

#[test]
fn a2c_updates_every_episode() {
    let mut trainer = Trainer::new(bell_env(), Algorithm::A2c, AgentHyper::a2c(), 2).unwrap();
    let records = trainer.train(20).unwrap();
    assert!(records.iter().all(|r| r.loss.is_some()));
}

#[test]
fn uniform_policy_entropy_is_log_k() {
    let env = bell_env();
    let mut model = ActorCritic::seeded(env.obs_dim(), env.n_actions(), 0);
    model.actor.as_mut_slice().iter_mut().for_each(|w| *w = 0.0);
    let mut env = env;
    let traj = episode_rollout(&mut env, |o| model.policy(o).unwrap(), 5).unwrap();
    let returns = discounted_returns(&traj.rewards(), 0.99, &traj.dones()).unwrap();
    let (a2c, _) = a2c_loss(&model, &traj, &returns, &AgentHyper::a2c()).unwrap();
    let ln_k = (env.n_actions() as f64).ln();
    assert!((a2c.entropy - traj.len() as f64 * ln_k).abs() < 1e-12);
    let (ppo, _) = ppo_loss(&model, &traj, &returns, &AgentHyper::ppo()).unwrap();
    assert!((ppo.entropy - ln_k).abs() < 1e-12);
}

#[test]
fn greedy_rollout_reports_fidelity() {
    let mut trainer = Trainer::new(bell_env(), Algorithm::Ppo, AgentHyper::ppo(), 0).unwrap();
    let model = trainer.model().clone();
    let (actions, fidelity) = greedy_actions(&model, trainer.env_mut()).unwrap();
    assert!(!actions.is_empty() && actions.len() <= DEFAULT_MAX_STEPS);
    assert!((0.0..=1.0).contains(&fidelity));
}

fn noisy_bell(p: f64) -> QasEnv {
    QasEnv::new(
        EnvConfig::new(PureState::bell())
            .with_threshold(0.95)
            .with_noise(NoiseSpec::uniform(p).unwrap()),
    )
    .unwrap()
}

#[test]
fn noisy_training_runs() {
    let hyper = AgentHyper {
        horizon: 200,
        ..AgentHyper::ppo()
    };
    let mut trainer = Trainer::new(noisy_bell(0.001), Algorithm::Ppo, hyper, 0).unwrap();
    let records = trainer.train(50).unwrap();
    assert!(records
        .iter()
        .all(|r| r.final_fidelity <= 1.0 && r.final_fidelity >= 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // The density-matrix path without noise reproduces the statevector path.
    #[test]
    fn forced_density_matrix_matches_pure(actions in prop::collection::vec(0usize..21, 1..12)) {
        let target = PureState::ghz(3);
        let mut pure = QasEnv::new(EnvConfig::new(target.clone())).unwrap();
        let mut cfg = EnvConfig::new(target);
        cfg.force_density_matrix = true;
        let mut mixed = QasEnv::new(cfg).unwrap();
        prop_assert_eq!(pure.reset().len(), mixed.reset().len());
        for a in actions {
            let p = pure.step(a).unwrap();
            let m = mixed.step(a).unwrap();
            prop_assert!((p.fidelity - m.fidelity).abs() < 1e-9);
            prop_assert!((p.reward - m.reward).abs() < 1e-9);
            prop_assert_eq!(p.done, m.done);
            for (x, y) in p.observation.iter().zip(m.observation.iter()) {
                prop_assert!((x - y).abs() < 1e-9);
            }
            if p.done {
                break;
            }
        }
    }

    #[test]
    fn observations_and_rewards_stay_bounded(
        actions in prop::collection::vec(0usize..12, 1..25),
        p in 0.0f64..0.2,
    ) {
        let mut env = noisy_bell(p);
        let mut total = 0.0;
        for a in actions {
            let s = env.step(a).unwrap();
            total += s.reward;
            prop_assert!(s.observation.iter().all(|v| v.abs() <= 1.0 + 1e-12));
            prop_assert!((0.0..=1.0 + 1e-12).contains(&s.fidelity));
            prop_assert!(s.steps_used <= DEFAULT_MAX_STEPS);
            if s.done {
                break;
            }
        }
        prop_assert!((-0.2 - 1e-12..=1.0).contains(&total));
    }
}
