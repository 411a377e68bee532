use std::collections::VecDeque;

use battlecity::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtmm_core::{GameModel, Player, PlayerAction, Until};

fn game(rows: &[&str]) -> BattleCity {
    BattleCity::new(Map::parse("fixture", &rows.join("\n")).unwrap())
}

fn kinds(a: &PlayerAction<BcAction>) -> Vec<BcKind> {
    a.iter().map(|x| x.kind).collect()
}

/// Breadth-first distances to `goal` over the same terrain rules the bots use.
fn bfs_from(g: &BattleCity, s: &BcState, goal: Pos) -> Vec<Option<u32>> {
    let m = g.map();
    let mut dist = vec![None; m.width * m.height];
    dist[m.index(goal)] = Some(0);
    let mut q = VecDeque::from([goal]);
    while let Some(at) = q.pop_front() {
        let d = dist[m.index(at)].unwrap();
        for dir in Dir::ALL {
            let n = at.step(dir);
            if m.in_bounds(n) && dist[m.index(n)].is_none() && g.open_ground(s, n) {
                dist[m.index(n)] = Some(d + 1);
                q.push_back(n);
            }
        }
    }
    dist
}

fn oracle_step(g: &BattleCity, s: &BcState, p: Player) -> Option<Dir> {
    let m = g.map();
    let from = s.tank(p).pos;
    let enemy = p.opponent();
    let mut best: Option<(u32, Vec<Option<u32>>, Pos)> = None;
    for goal in [s.tank(enemy).pos, s.base(enemy).pos] {
        let dist = bfs_from(g, s, goal);
        // The start cell itself need not be open ground; measure through its neighbours.
        let d = Dir::ALL
            .iter()
            .filter_map(|&dir| {
                let n = from.step(dir);
                if n == goal {
                    Some(1)
                } else if m.in_bounds(n) && g.open_ground(s, n) {
                    dist[m.index(n)].map(|x| x + 1)
                } else {
                    None
                }
            })
            .min();
        if let Some(d) = d {
            if best.as_ref().is_none_or(|b| d < b.0) {
                best = Some((d, dist, goal));
            }
        }
    }
    let (d, dist, goal) = best?;
    Dir::ALL.into_iter().find(|&dir| {
        let n = from.step(dir);
        n == goal || (m.in_bounds(n) && g.open_ground(s, n) && dist[m.index(n)] == Some(d - 1))
    })
}

#[test]
fn no_fire_when_own_base_is_in_the_line_of_fire() {
    let g = game(&["b....", "...B.", "A....", ".....", "a...."]);
    let mut s = g.initial();
    s.tanks[0].facing = Dir::Down;
    s.tanks[0].channels[0] = Some(Busy {
        kind: BcKind::Move(Dir::Down),
        left: 4,
        started: true,
    });
    assert!(base_in_line_of_fire(
        &g,
        &s,
        Player::Max,
        s.tanks[0].pos,
        Dir::Down
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert_eq!(
        kinds(&random_bot(&g, &s, Player::Max, &mut rng)),
        vec![BcKind::NoFire]
    );
    assert_eq!(
        kinds(&follower_bot(&g, &s, Player::Max)),
        vec![BcKind::NoFire]
    );

    s.tanks[0].facing = Dir::Up;
    assert_eq!(
        kinds(&random_bot(&g, &s, Player::Max, &mut rng)),
        vec![BcKind::Fire]
    );
    assert_eq!(
        kinds(&follower_bot(&g, &s, Player::Max)),
        vec![BcKind::Fire]
    );
}

#[test]
fn walls_shield_the_base_from_the_safety_check() {
    let g = game(&["b....", "...B.", "A....", "%....", "a...."]);
    let s = g.initial();
    assert!(!base_in_line_of_fire(
        &g,
        &s,
        Player::Max,
        s.tanks[0].pos,
        Dir::Down
    ));
}

#[test]
fn random_bot_checks_the_direction_it_is_about_to_face() {
    let g = game(&["b....", "...B.", "A....", ".....", "a...."]);
    let s = g.initial();
    let mut seen = std::collections::HashSet::new();
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_bot(&g, &s, Player::Max, &mut rng);
        let k = kinds(&a);
        let BcKind::Move(d) = k[0] else {
            panic!("random bot always moves")
        };
        assert_eq!(k[1] == BcKind::NoFire, d == Dir::Down, "{k:?}");
        assert!(g.player_actions(&s, Player::Max).contains(&a));
        seen.insert(d);
    }
    assert_eq!(seen.len(), 4);
}

#[test]
fn random_bot_is_reproducible_for_a_seed() {
    let g = BattleCity::new(Map::by_name("bunkers").unwrap());
    let run = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = g.initial();
        let mut log = Vec::new();
        while s.clock.cycles() < 400 && !g.winner(&s).is_over() {
            for p in Player::BOTH {
                if g.can_act(&s, p) {
                    let a = random_bot(&g, &s, p, &mut rng);
                    s = g.issue(&s, &a, p).unwrap();
                    log.push(a);
                }
            }
            s = g.simulate(&s, Until::Unbounded).unwrap();
        }
        log
    };
    assert_eq!(run(11), run(11));
    assert_ne!(run(11), run(12));
}

#[test]
fn follower_runs_down_an_open_corridor() {
    let g = game(&["#########", "A.......b", "#########", "B#......a"]);
    let s = g.initial();
    assert_eq!(follow_step(&g, &s, Player::Max), Some(Dir::Right));
    assert_eq!(
        kinds(&follower_bot(&g, &s, Player::Max)),
        vec![BcKind::Move(Dir::Right), BcKind::Fire]
    );
}

#[test]
fn follower_prefers_the_nearer_target() {
    let g = game(&[
        "........b",
        ".........",
        "...A.B...",
        ".........",
        "a........",
    ]);
    let s = g.initial();
    assert_eq!(follow_step(&g, &s, Player::Max), Some(Dir::Right));
    assert_eq!(follow_step(&g, &s, Player::Min), Some(Dir::Left));
}

#[test]
fn follower_stays_put_without_a_path() {
    let g = game(&["A#..b", "%#...", "##..B", "a...."]);
    let s = g.initial();
    assert_eq!(follow_step(&g, &s, Player::Max), None);
    assert_eq!(kinds(&follower_bot(&g, &s, Player::Max))[0], BcKind::NoMove);
}

#[test]
fn follower_breaks_ties_up_down_left_right() {
    // Going up or going down around the block is equally short.
    let g = game(&[
        "........", "..###...", "A.###..b", "..###...", "......##", "a.....#B",
    ]);
    let s = g.initial();
    assert_eq!(astar(&g, &s, s.tanks[0].pos, s.bases[1].pos), Some(11));
    assert_eq!(follow_step(&g, &s, Player::Max), Some(Dir::Up));
    assert_eq!(
        follow_step(&g, &s, Player::Max),
        oracle_step(&g, &s, Player::Max)
    );
}

#[test]
fn follower_matches_breadth_first_oracle_on_bundled_maps() {
    for map in Map::bundled() {
        let g = BattleCity::new(map);
        let mut s = g.initial();
        let (w, h) = (g.map().width as i32, g.map().height as i32);
        let mut checked = 0;
        for y in 0..h {
            for x in 0..w {
                let p = Pos::new(x, y);
                if !g.open_ground(&s, p) || p == s.tanks[1].pos {
                    continue;
                }
                s.tanks[0].pos = p;
                assert_eq!(
                    follow_step(&g, &s, Player::Max),
                    oracle_step(&g, &s, Player::Max),
                    "{} at {p}",
                    g.map().name
                );
                checked += 1;
            }
        }
        assert!(checked > 100);
    }
}
