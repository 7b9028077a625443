use proptest::prelude::*;

use pso_planner::geometry::{distance, Circle, Obstacle, Point2};
use pso_planner::planner::{offset_from_line, plan, Bounds, PlannerConfig, Workspace};
use pso_planner::pso::PsoConfig;

fn config(n: usize, seed: u64) -> PlannerConfig {
    PlannerConfig { waypoints: n, pso: PsoConfig { rng_seed: seed, ..PsoConfig::default() }, ..PlannerConfig::default() }
}

fn endpoints() -> impl Strategy<Value = (Point2, Point2)> {
    (0.0..20.0f64, 0.0..20.0f64, 0.0..20.0f64, 0.0..20.0f64)
        .prop_filter("endpoints too close", |(a, b, c, d)| (a - c).hypot(b - d) > 1.0)
        .prop_map(|(a, b, c, d)| (Point2::new(a, b), Point2::new(c, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn obstacle_free_paths_track_the_straight_line((sp, gp) in endpoints(), n in 1usize..25, seed in any::<u64>()) {
        let ws = Workspace::new(Bounds::new(0., 0., 20., 20.), vec![], sp, gp, 0.1, 0.2).unwrap();
        let result = plan(&ws, &config(n, seed)).unwrap();
        let pts = result.path.waypoints();
        let d = distance(sp, gp);
        prop_assert_eq!(pts.len(), n + 2);
        prop_assert_eq!(pts[0], sp);
        prop_assert_eq!(pts[n + 1], gp);
        prop_assert!(result.feasible);
        // collinear waypoints can sum a few ulps short of the direct distance
        prop_assert!(result.total_length >= d * (1.0 - 1e-12));
        for p in &pts[1..=n] {
            prop_assert!(offset_from_line(*p, sp, gp) < 0.05 * d);
        }
        for w in pts.windows(2) {
            prop_assert!(distance(w[1], gp) <= distance(w[0], gp) + 1e-9);
        }
        for history in &result.fitness_history {
            prop_assert!(history.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn feasible_paths_clear_random_discs(
        discs in prop::collection::vec((3.0..17.0f64, 3.0..17.0f64, 0.3..1.5f64), 1..6),
        seed in any::<u64>(),
    ) {
        let sp = Point2::new(1., 1.);
        let gp = Point2::new(19., 19.);
        let obstacles: Vec<Obstacle> = discs
            .iter()
            .map(|(x, y, r)| Circle::new(Point2::new(*x, *y), *r).unwrap().into())
            .collect();
        let ws = Workspace::new(Bounds::new(0., 0., 20., 20.), obstacles, sp, gp, 0.1, 0.2).unwrap();
        let result = plan(&ws, &config(40, seed)).unwrap();
        let pts = result.path.waypoints();
        prop_assert_eq!(pts[0], sp);
        prop_assert_eq!(*pts.last().unwrap(), gp);
        prop_assert!(result.total_length >= distance(sp, gp) * (1.0 - 1e-12));
        if result.feasible {
            let clearance = ws.robot_radius() + ws.safety_margin();
            for w in pts.windows(2) {
                for (x, y, r) in &discs {
                    let gap = pso_planner::geometry::point_segment_distance(Point2::new(*x, *y), w[0], w[1]) - r;
                    prop_assert!(gap > clearance);
                }
            }
        }
    }
}
