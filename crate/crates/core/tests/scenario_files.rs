use proptest::prelude::*;
use strrt::goal::{GoalConfigs, GoalRegion};
use strrt::scenario::{
    load_scenario, load_scenario_file, make_cluttered, make_narrow_passage, save_scenario,
    DynamicSphereObstacle, ObstacleTrajectory, Scenario, ScenarioError, TimedBoxObstacle,
    DEFAULT_NARROW_WINDOWS,
};
use strrt::space::{SpaceTimeSpace, State};

fn scenario() -> impl Strategy<Value = Scenario> {
    (1usize..4).prop_flat_map(|dim| {
        let coord = move || prop::collection::vec(0.0f64..10.0, dim);
        let sphere = (
            0.1f64..2.0,
            prop::collection::vec((0.1f64..5.0, coord()), 1..4),
        )
            .prop_map(move |(radius, steps)| {
                let mut t = 0.0;
                let waypoints = steps
                    .into_iter()
                    .map(|(dt, p)| {
                        t += dt;
                        (t, p)
                    })
                    .collect();
                DynamicSphereObstacle {
                    radius,
                    trajectory: ObstacleTrajectory::new(waypoints, dim).unwrap(),
                }
            });
        let boxes = (coord(), coord(), prop::collection::vec((0.0f64..5.0, 0.1f64..3.0), 0..3))
            .prop_map(|(a, b, gaps)| {
                let lo = a.iter().zip(&b).map(|(x, y)| x.min(*y)).collect();
                let hi = a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect();
                let mut t = 0.0;
                let open_windows = gaps
                    .into_iter()
                    .map(|(gap, len)| {
                        let w = (t + gap + 0.01, t + gap + 0.01 + len);
                        t = w.1;
                        w
                    })
                    .collect();
                TimedBoxObstacle { lo, hi, open_windows }
            });
        let goal = prop_oneof![
            prop::collection::vec(coord(), 1..3).prop_map(GoalConfigs::Set),
            (coord(), coord()).prop_map(|(a, b)| GoalConfigs::Box {
                lo: a.iter().zip(&b).map(|(x, y)| x.min(*y)).collect(),
                hi: a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect(),
            }),
        ];
        (
            coord(),
            0.0f64..3.0,
            goal,
            prop::option::of(5.0f64..50.0),
            prop::collection::vec(sphere, 0..4),
            prop::collection::vec(boxes, 0..3),
            0.0f64..0.5,
            0.01f64..0.2,
            0.1f64..0.9,
        )
            .prop_map(
                move |(start, t0, configs, t_max, spheres, boxes, robot_radius, res, lambda)| Scenario {
                    space: SpaceTimeSpace::uniform(dim, 0.0, 10.0, 1.5, lambda).unwrap(),
                    start: State::new(start, t0),
                    goal: GoalRegion { configs, t_max },
                    robot_radius,
                    sphere_obstacles: spheres,
                    box_obstacles: boxes,
                    check_resolution: res,
                },
            )
            .prop_filter("start must be free", |s| {
                s.validate().is_ok() && s.is_state_valid(&s.start)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn save_load_round_trip(scn in scenario()) {
        let bytes = save_scenario(&scn);
        let back = load_scenario(&bytes).unwrap();
        prop_assert_eq!(&back, &scn);
        prop_assert_eq!(save_scenario(&back), bytes);
    }
}

#[test]
fn generated_scenarios_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for (i, scn) in [
        make_narrow_passage(1, &DEFAULT_NARROW_WINDOWS).unwrap(),
        make_narrow_passage(8, &DEFAULT_NARROW_WINDOWS).unwrap(),
        make_cluttered(2, 25, 9).unwrap(),
    ]
    .into_iter()
    .enumerate()
    {
        let path = dir.path().join(format!("s{i}.json"));
        std::fs::write(&path, save_scenario(&scn)).unwrap();
        assert_eq!(load_scenario_file(&path).unwrap(), scn);
    }
}

#[test]
fn out_of_order_waypoints_name_the_obstacle() {
    let mut doc: serde_json::Value =
        serde_json::from_slice(&save_scenario(&make_cluttered(2, 3, 1).unwrap())).unwrap();
    let wp = &mut doc["sphere_obstacles"][1]["waypoints"];
    wp[1][0] = serde_json::json!(-1.0);
    let err = load_scenario(doc.to_string().as_bytes()).unwrap_err();
    assert!(matches!(err, ScenarioError::Invalid { .. }));
    assert!(err.path().starts_with("sphere_obstacles[1]"), "{}", err.path());
}

#[test]
fn unknown_keys_are_rejected() {
    let mut doc: serde_json::Value =
        serde_json::from_slice(&save_scenario(&make_cluttered(1, 0, 1).unwrap())).unwrap();
    doc["colour"] = serde_json::json!("red");
    let err = load_scenario(doc.to_string().as_bytes()).unwrap_err();
    assert!(matches!(err, ScenarioError::Parse { .. }));
}

#[test]
fn missing_file_is_an_io_error() {
    let err = load_scenario_file("/nonexistent/scenario.json").unwrap_err();
    assert!(matches!(err, ScenarioError::Io { .. }));
}
