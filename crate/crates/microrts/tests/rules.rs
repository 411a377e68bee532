use microrts::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rtmm_core::{GameClock, GameModel, GameOutcome, ModelError, Player, PlayerAction, Until};

fn game(text: &str) -> MicroRts {
    MicroRts::new(Scenario::parse("fixture", text).unwrap())
}

fn order(unit: u32, kind: MrKind) -> PlayerAction<MrAction> {
    PlayerAction::single(MrAction { unit, kind })
}

/// Gives every idle unit of both sides a no-action.
fn idle_all(g: &MicroRts, s: &MrState) -> MrState {
    let mut s = s.clone();
    for p in Player::BOTH {
        let a = g.idle_action(&s, p);
        s = g.issue(&s, &a, p).unwrap();
    }
    s
}

fn step_until_decision(g: &MicroRts, s: &MrState) -> MrState {
    let mut s = s.clone();
    while !g.winner(&s).is_over() && !Player::BOTH.iter().any(|&p| g.can_act(&s, p)) {
        s = g.simulate(&s, Until::Cycle(s.clock + 1)).unwrap();
    }
    s
}

fn ledger_balanced(s: &MrState, start: [i64; 2]) -> bool {
    Player::BOTH.iter().all(|&p| {
        let i = p.index();
        s.resources[i] + s.carried(p) + s.spent[i] + s.lost[i] == start[i] + s.harvested[i]
    })
}

#[test]
fn melee_scenario_shape() {
    let g = MicroRts::new(Scenario::make(ScenarioKind::Melee));
    let s = g.initial();
    assert_eq!((g.scenario().width, g.scenario().height), (8, 8));
    assert_eq!(s.units.len(), 8);
    assert_eq!(s.resources, [0, 0]);
    for p in Player::BOTH {
        let count = |k| s.owned(p).filter(|u| u.kind == k).count();
        assert_eq!((count(UnitKind::Light), count(UnitKind::Heavy)), (2, 2));
        assert!(g.can_act(&s, p));
    }
    assert_eq!(g.evaluate::<f64>(&s), 0.0);
    let branching = g.player_actions(&s, Player::Max).len();
    assert!((4..=600).contains(&branching), "{branching}");
}

#[test]
fn full_scenario_shape() {
    let g = MicroRts::new(Scenario::make(ScenarioKind::Full));
    let s = g.initial();
    for p in Player::BOTH {
        let kinds: Vec<_> = s.owned(p).map(|u| u.kind).collect();
        assert_eq!(kinds.len(), 2);
        assert!(kinds.contains(&UnitKind::Worker) && kinds.contains(&UnitKind::Base));
    }
    assert_eq!(
        s.units.iter().filter(|u| u.kind == UnitKind::Mine).count(),
        2
    );
    assert_eq!(s.resources, [5, 5]);
    assert_eq!(g.evaluate::<i64>(&s), 0);
    assert_eq!(g.winner(&s), GameOutcome::Ongoing);
}

#[test]
fn scenario_names_and_errors() {
    assert_eq!("melee".parse::<ScenarioKind>(), Ok(ScenarioKind::Melee));
    assert!(Scenario::by_name("huge").is_err());
    assert_eq!(Scenario::parse("x", ""), Err(ScenarioError::Empty));
    assert!(matches!(
        Scenario::parse("x", "W.\nw"),
        Err(ScenarioError::Ragged { .. })
    ));
    assert!(matches!(
        Scenario::parse("x", "Wz\nw."),
        Err(ScenarioError::UnknownChar { ch: 'z', .. })
    ));
    assert!(matches!(
        Scenario::parse("x", "Wm\nw."),
        Err(ScenarioError::UnknownChar { ch: 'm', .. })
    ));
    assert_eq!(
        Scenario::parse("x", "W.\nM."),
        Err(ScenarioError::NoUnits(Player::Min))
    );
    assert!(matches!(
        Scenario::parse("x", "resources 3\nW.\nw."),
        Err(ScenarioError::BadHeader(_))
    ));
    let sc = Scenario::parse("x", "resources 7 2\nW#\nw.").unwrap();
    assert_eq!(sc.resources, [7, 2]);
    assert_eq!(sc.walls, vec![false, true, false, false]);
}

#[test]
fn winner_follows_unit_counts() {
    let g = game("W.\n.w");
    let mut s = g.initial();
    assert_eq!(g.winner(&s), GameOutcome::Ongoing);
    s.units.retain(|u| u.owner != Some(Player::Min));
    assert_eq!(g.winner(&s), GameOutcome::MaxWins);
    assert!(!g.can_act(&s, Player::Max));
    s.units.clear();
    assert_eq!(g.winner(&s), GameOutcome::Draw);
}

#[test]
fn evaluation_counts_unit_cost() {
    let g = game("B.W\n...\n..b");
    let s = g.initial();
    assert_eq!(g.evaluate::<f64>(&s), 1.0);
    let mut gone = s.clone();
    gone.clock = GameClock(500);
    gone.units.retain(|u| u.owner != Some(Player::Min));
    assert_eq!(g.evaluate::<f64>(&gone), (WIN_SCORE - 500) as f64);
}

#[test]
fn per_unit_choices_stay_within_twenty_four() {
    // A worker in open ground with money: 4 moves, 8 builds, no-action.
    let g = game("resources 20 0\n.....\n.....\n..W..\n.....\n....b");
    let s = g.initial();
    let w = s.unit(0).unwrap();
    let acts = g.unit_actions(&s, w);
    assert_eq!(acts.len(), 13);
    assert_eq!(g.player_actions(&s, Player::Max).len(), 13);
    // The full order alphabet of a worker, no-action aside.
    let alphabet = 4 + 4 + 4 + 4 + 2 * 4;
    assert_eq!(alphabet, 24);
    assert!(acts.len() <= alphabet);
}

#[test]
fn mirrored_units_list_mirrored_options() {
    let flip = |d: Dir| match d {
        Dir::Up => Dir::Down,
        Dir::Down => Dir::Up,
        Dir::Left => Dir::Right,
        Dir::Right => Dir::Left,
    };
    let reflect = |k: MrKind| match k {
        MrKind::Move(d) => MrKind::Move(flip(d)),
        MrKind::Attack(d) => MrKind::Attack(flip(d)),
        MrKind::Harvest(d) => MrKind::Harvest(flip(d)),
        MrKind::Return(d) => MrKind::Return(flip(d)),
        MrKind::Build(u, d) => MrKind::Build(u, flip(d)),
        MrKind::Train(u, d) => MrKind::Train(u, flip(d)),
        MrKind::NoAction => MrKind::NoAction,
    };
    for kind in ScenarioKind::ALL {
        let g = MicroRts::new(Scenario::make(kind));
        let s = g.initial();
        let (w, h) = (g.scenario().width as i32, g.scenario().height as i32);
        for u in s.owned(Player::Max) {
            let twin = s
                .unit_at(Pos::new(w - 1 - u.pos.x, h - 1 - u.pos.y))
                .unwrap();
            assert_eq!(twin.owner, Some(Player::Min));
            let mine: Vec<_> = g.unit_actions(&s, u).into_iter().map(reflect).collect();
            assert_eq!(mine, g.unit_actions(&s, twin), "{kind} unit {}", u.id);
        }
    }
}

#[test]
fn player_actions_are_the_unit_cross_product() {
    let g = game("L.H\n...\nlh.");
    let s = g.initial();
    let l = g.unit_actions(&s, s.unit(0).unwrap()).len();
    let h = g.unit_actions(&s, s.unit(1).unwrap()).len();
    assert_eq!(g.player_actions(&s, Player::Max).len(), l * h);
    let busy = idle_all(&g, &s);
    assert_eq!(
        g.player_actions(&busy, Player::Max),
        vec![PlayerAction::empty()]
    );
}

#[test]
fn issue_checks_and_preserves_time() {
    let g = game("W.M\n...\n..w");
    let s = g.initial();
    let mv = order(0, MrKind::Move(Dir::Right));
    let next = g.issue(&s, &mv, Player::Max).unwrap();
    assert_eq!(next.clock, s.clock);
    assert_eq!(next, g.issue(&s, &mv, Player::Max).unwrap());
    assert_eq!(g.issue(&s, &PlayerAction::empty(), Player::Max).unwrap(), s);
    assert!(matches!(
        g.issue(&s, &mv, Player::Min),
        Err(ModelError::IllegalAction(_))
    ));
    assert!(g
        .issue(&s, &order(0, MrKind::Harvest(Dir::Right)), Player::Max)
        .is_err());
    assert!(g.issue(&next, &mv, Player::Max).is_err());
    assert!(g
        .issue(&s, &order(9, MrKind::NoAction), Player::Max)
        .is_err());
}

#[test]
fn harvest_then_return() {
    let g = game(".M..\n.W..\n.B..\n...w");
    let s = g.initial();
    let s = g
        .issue(&s, &order(1, MrKind::Harvest(Dir::Up)), Player::Max)
        .unwrap();
    assert_eq!(
        g.eta(
            &MrAction {
                unit: 1,
                kind: MrKind::Harvest(Dir::Up)
            },
            &s
        ),
        Ok(20)
    );
    let mut at = s.clone();
    for t in 1..=20 {
        at = g
            .simulate(&idle_all(&g, &at), Until::Cycle(GameClock(t)))
            .unwrap();
        assert_eq!(at.unit(1).unwrap().carry, (t == 20) as i64, "cycle {t}");
    }
    assert_eq!(at.harvested[0], 1);
    let worker = at.unit(1).unwrap();
    assert!(g
        .unit_actions(&at, worker)
        .contains(&MrKind::Return(Dir::Down)));
    assert!(!g
        .unit_actions(&at, worker)
        .contains(&MrKind::Harvest(Dir::Up)));
    let at = g
        .issue(&at, &order(1, MrKind::Return(Dir::Down)), Player::Max)
        .unwrap();
    let at = g
        .simulate(&idle_all(&g, &at), Until::Cycle(at.clock + 10))
        .unwrap();
    assert_eq!(at.resources[0], 1);
    assert_eq!(at.unit(1).unwrap().carry, 0);
    assert!(ledger_balanced(&at, [0, 0]));
}

#[test]
fn training_pays_up_front_and_delivers_on_completion() {
    let g = game("resources 3 0\nB...\n....\n...w");
    let s = g.initial();
    let s = g
        .issue(
            &s,
            &order(0, MrKind::Train(UnitKind::Worker, Dir::Right)),
            Player::Max,
        )
        .unwrap();
    let s = g
        .issue(&s, &order(1, MrKind::NoAction), Player::Min)
        .unwrap();
    let one = g.simulate(&s, Until::Cycle(GameClock(1))).unwrap();
    assert_eq!((one.resources[0], one.spent[0]), (2, 1));
    let done = step_until_decision(&g, &idle_all(&g, &one));
    let mut t = done;
    while t.clock < GameClock(100) {
        t = step_until_decision(&g, &idle_all(&g, &t));
    }
    assert_eq!(t.clock, GameClock(100));
    let fresh = t
        .owned(Player::Max)
        .find(|u| u.kind == UnitKind::Worker)
        .unwrap();
    assert_eq!(fresh.pos, Pos::new(1, 0));
    assert_eq!(fresh.id, 2);
    assert!(fresh.idle());
}

#[test]
fn blocked_production_is_refunded() {
    let g = game("resources 5 0\nW...\n....\n...w");
    let s = g.initial();
    let s = g
        .issue(
            &s,
            &order(0, MrKind::Build(UnitKind::Barracks, Dir::Right)),
            Player::Max,
        )
        .unwrap();
    let s = g
        .issue(&s, &order(1, MrKind::NoAction), Player::Min)
        .unwrap();
    let mut at = g.simulate(&s, Until::Cycle(GameClock(1))).unwrap();
    assert_eq!(at.resources[0], 0);
    // Park an enemy on the construction site.
    let i = at.units.iter().position(|u| u.id == 1).unwrap();
    at.units[i].pos = Pos::new(1, 0);
    while at.clock < GameClock(100) {
        at = step_until_decision(&g, &idle_all(&g, &at));
    }
    assert_eq!(at.resources[0], 5);
    assert_eq!(at.spent[0], 0);
    assert_eq!(at.units.len(), 2);
}

#[test]
fn attack_lands_on_completion() {
    let g = game("LH\nhl");
    let s = g.initial();
    let s = g
        .issue(
            &s,
            &PlayerAction::new(vec![
                MrAction {
                    unit: 0,
                    kind: MrKind::Attack(Dir::Down),
                },
                MrAction {
                    unit: 1,
                    kind: MrKind::NoAction,
                },
            ])
            .unwrap(),
            Player::Max,
        )
        .unwrap();
    let s = g
        .issue(&s, &g.idle_action(&s, Player::Min), Player::Min)
        .unwrap();
    let four = g.simulate(&s, Until::Cycle(GameClock(4))).unwrap();
    assert_eq!(four.unit(2).unwrap().hp, 8);
    let five = g.simulate(&four, Until::Unbounded).unwrap();
    assert_eq!(five.clock, GameClock(5));
    assert_eq!(five.unit(2).unwrap().hp, 6);
}

#[test]
fn killing_the_last_unit_ends_the_game() {
    let g = game("H.\nw.");
    let s = g.initial();
    let s = g
        .issue(&s, &order(0, MrKind::Attack(Dir::Down)), Player::Max)
        .unwrap();
    let s = g
        .issue(&s, &order(1, MrKind::Move(Dir::Right)), Player::Min)
        .unwrap();
    // The worker steps away in the first cycle, so the blow misses.
    let after = g.simulate(&s, Until::Unbounded).unwrap();
    assert_eq!(after.unit(1).unwrap().hp, 1);
    let s = g
        .issue(
            &g.initial(),
            &order(0, MrKind::Attack(Dir::Down)),
            Player::Max,
        )
        .unwrap();
    let s = g
        .issue(&s, &order(1, MrKind::NoAction), Player::Min)
        .unwrap();
    let end = g.simulate(&s, Until::Unbounded).unwrap();
    assert_eq!(end.clock, GameClock(5));
    assert_eq!(g.winner(&end), GameOutcome::MaxWins);
    assert_eq!(g.evaluate::<i64>(&end), WIN_SCORE - 5);
}

#[test]
fn move_conflicts_go_to_the_lower_id() {
    let g = game("L.l");
    let s = g.initial();
    let s = g
        .issue(&s, &order(0, MrKind::Move(Dir::Right)), Player::Max)
        .unwrap();
    let s = g
        .issue(&s, &order(1, MrKind::Move(Dir::Left)), Player::Min)
        .unwrap();
    let s = g.simulate(&s, Until::Cycle(GameClock(1))).unwrap();
    assert_eq!(s.unit(0).unwrap().pos, Pos::new(1, 0));
    assert_eq!(s.unit(1).unwrap().pos, Pos::new(2, 0));
    assert_eq!(
        g.eta(
            &MrAction {
                unit: 1,
                kind: MrKind::Move(Dir::Left)
            },
            &s
        ),
        Ok(7)
    );
}

#[test]
fn simulate_is_identity_where_someone_can_act() {
    let g = MicroRts::new(Scenario::make(ScenarioKind::Full));
    let s = g.initial();
    assert_eq!(g.simulate(&s, Until::Unbounded).unwrap(), s);
    assert_eq!(g.simulate(&s, Until::Cycle(s.clock)).unwrap(), s);
}

fn random_playout(kind: ScenarioKind, seed: u64, decisions: usize) -> Result<(), TestCaseError> {
    let g = MicroRts::new(Scenario::make(kind));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = g.initial();
    let start = s.resources;
    for _ in 0..decisions {
        if g.winner(&s).is_over() {
            break;
        }
        for p in Player::BOTH {
            for u in s.owned(p) {
                prop_assert!(g.unit_actions(&s, u).len() <= 24);
            }
            let options = g.player_actions(&s, p);
            prop_assert!(!options.is_empty());
            prop_assert_eq!(
                options.len() == 1 && options[0].is_empty(),
                !g.can_act(&s, p)
            );
            let pick = &options[rng.gen_range(0..options.len())];
            s = g.issue(&s, pick, p).unwrap();
        }
        let fast = g.simulate(&s, Until::Unbounded).unwrap();
        prop_assert_eq!(&fast, &step_until_decision(&g, &s));
        prop_assert!(fast.clock > s.clock || g.winner(&fast).is_over());
        prop_assert!(ledger_balanced(&fast, start));
        let mut cells: Vec<Pos> = fast.units.iter().map(|u| u.pos).collect();
        cells.sort();
        cells.dedup();
        prop_assert_eq!(cells.len(), fast.units.len());
        s = fast;
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn full_game_playouts_keep_the_invariants(seed in any::<u64>()) {
        random_playout(ScenarioKind::Full, seed, 120)?;
    }

    #[test]
    fn melee_playouts_keep_the_invariants(seed in any::<u64>()) {
        random_playout(ScenarioKind::Melee, seed, 60)?;
    }
}
