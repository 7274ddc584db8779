use apollonia::apollonian::{
    apollonian_boundary, apollonian_distance, apollonian_parameters, apollonian_parameters_raw, FibonacciSphere,
    HalfSpaceBoundary, UnitCircleGrid,
};
use apollonia::bounds::{ball_full_report, half_lower_bounds, constant_ordering, scalar_sqrt_bounds};
use apollonia::disk::{
    ahlfors_bracket, ball_to_euclidean, bisect_construction, bisector_disk, geodesic_disk, midpoint_disk,
    midpoint_origin_special, rho_ball, rho_sup_absratio, sphere_to_apollonian,
};
use apollonia::geom::quadrature::{path_length_quadrature, Path, WeightFunction};
use apollonia::geom::ratio::{absolute_ratio, cross_ratio, orthogonal_circle_through, unit_sphere_inversion};
use apollonia::geom::{disk_automorphism, ExtPoint};
use apollonia::half::{bisector_half, disk_to_half, geodesic_half, midpoint_half, rho_half, HalfSpacePoint};
use apollonia::{CircleOrLine, Point};
use num_complex::Complex64;
use std::f64::consts::TAU;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type PointMap<'a> = Box<dyn Fn(&Point) -> Point + 'a>;

fn in_ball(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Point {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let p = Point::new(v).unwrap();
        if p.norm_sq() < 1.0 {
            return p.scale(radius);
        }
    }
}

fn in_half(rng: &mut ChaCha8Rng, n: usize) -> HalfSpacePoint {
    let mut v: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-3.0..3.0)).collect();
    v.push(10f64.powf(rng.random_range(-3.0..1.0)));
    HalfSpacePoint::new(Point::new(v).unwrap()).unwrap()
}

fn ball_radius(i: usize) -> f64 {
    1.0 - 10f64.powi(-[1, 3, 6][i % 3])
}

fn point2() -> impl Strategy<Value = Point> {
    (0.0..std::f64::consts::TAU, 0.0..0.999f64).prop_map(|(t, r)| Point::xy(r * t.cos(), r * t.sin()))
}

fn half2() -> impl Strategy<Value = HalfSpacePoint> {
    (-5.0..5.0f64, 0.01..5.0f64).prop_map(|(a, b)| HalfSpacePoint::xy(a, b).unwrap())
}

proptest! {
    #[test]
    fn rho_ball_is_a_metric(x in point2(), y in point2(), z in point2()) {
        let (xy, yx) = (rho_ball(&x, &y).unwrap(), rho_ball(&y, &x).unwrap());
        prop_assert_eq!(xy, yx);
        prop_assert!(xy <= rho_ball(&x, &z).unwrap() + rho_ball(&z, &y).unwrap() + 1e-12);
    }

    #[test]
    fn rho_half_is_a_metric(x in half2(), y in half2(), z in half2()) {
        let xy = rho_half(&x, &y).unwrap();
        prop_assert_eq!(xy, rho_half(&y, &x).unwrap());
        prop_assert!(xy <= rho_half(&x, &z).unwrap() + rho_half(&z, &y).unwrap() + 1e-12);
    }

    #[test]
    fn tanh_half_matches_bracket(x in point2(), y in point2()) {
        let rho = rho_ball(&x, &y).unwrap();
        let a = ahlfors_bracket(&x, &y).unwrap();
        prop_assert!(((rho / 2.0).tanh() * a - x.dist(&y)).abs() < 1e-12);
        if x.norm() > 1e-3 {
            let xs = unit_sphere_inversion(&x).unwrap();
            prop_assert!((x.norm() * xs.dist(&y) - a).abs() < 1e-12 * xs.norm().max(1.0));
        }
    }

    #[test]
    fn half_space_invariances(x in half2(), y in half2(), v in -10.0..10.0f64, l in 0.01..100.0f64) {
        let rho = rho_half(&x, &y).unwrap();
        let sh = |p: &HalfSpacePoint| HalfSpacePoint::xy(p.point().coords()[0] + v, p.height()).unwrap();
        prop_assert!((rho_half(&sh(&x), &sh(&y)).unwrap() - rho).abs() <= 1e-12 * rho.max(1.0));
        let sc = |p: &HalfSpacePoint| HalfSpacePoint::new(p.point().scale(l)).unwrap();
        prop_assert!((rho_half(&sc(&x), &sc(&y)).unwrap() - rho).abs() < 1e-12 * rho.max(1.0));
    }

    #[test]
    fn absolute_ratio_is_mobius_invariant(
        pts in prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 4),
        shift in (-1.0..1.0f64, -1.0..1.0f64), angle in 0.0..6.3f64, scale in 0.1..10.0f64,
    ) {
        let p: Vec<Point> = pts.iter().map(|(a, b)| Point::xy(*a, *b)).collect();
        for i in 0..4 { for j in i + 1..4 { prop_assume!(p[i].dist(&p[j]) > 1e-3); } }
        prop_assume!(p.iter().all(|q| q.norm() > 1e-2));
        let e = |q: &Point| ExtPoint::Finite(q.clone());
        let base = absolute_ratio(&e(&p[0]), &e(&p[1]), &e(&p[2]), &e(&p[3])).unwrap();
        let swapped = absolute_ratio(&e(&p[0]), &e(&p[2]), &e(&p[1]), &e(&p[3])).unwrap();
        prop_assert!((base * swapped - 1.0).abs() < 1e-10);
        let (c, s) = angle.sin_cos();
        let maps: Vec<PointMap> = vec![
            Box::new(|q: &Point| q.add_scaled(1.0, &Point::xy(shift.0, shift.1))),
            Box::new(move |q: &Point| Point::xy(c * q.coords()[0] - s * q.coords()[1], s * q.coords()[0] + c * q.coords()[1])),
            Box::new(move |q: &Point| q.scale(scale)),
            Box::new(|q: &Point| unit_sphere_inversion(q).unwrap()),
        ];
        for f in maps {
            let img: Vec<ExtPoint> = p.iter().map(|q| ExtPoint::Finite(f(q))).collect();
            let v = absolute_ratio(&img[0], &img[1], &img[2], &img[3]).unwrap();
            prop_assert!((v - base).abs() <= 1e-10 * base.max(1.0));
        }
    }

    #[test]
    fn concyclic_cross_ratio_is_real(
        cx in -3.0..3.0f64, cy in -3.0..3.0f64, r in 0.1..5.0f64,
        t in prop::collection::vec(0.0..TAU, 4),
    ) {
        let mut t = t;
        t.sort_by(f64::total_cmp);
        for w in t.windows(2) { prop_assume!(w[1] - w[0] > 0.05); }
        let z: Vec<Complex64> = t.iter().map(|a| Complex64::new(cx, cy) + Complex64::from_polar(r, *a)).collect();
        let cr = cross_ratio(z[0], z[1], z[2], z[3]).unwrap();
        prop_assert!(cr.im.abs() <= 1e-9 * cr.norm().max(1.0));
    }

    #[test]
    fn orthogonal_circle_identity(
        cx in -3.0..3.0f64, cy in -3.0..3.0f64, r in 0.1..5.0f64, a in 0.0..TAU, b in 0.0..TAU,
    ) {
        prop_assume!((a - b).abs() > 1e-3 && ((a - b).abs() - std::f64::consts::PI).abs() > 1e-3);
        let x = Point::xy(cx, cy);
        let y = x.add_scaled(r, &Point::xy(a.cos(), a.sin()));
        let z = x.add_scaled(r, &Point::xy(b.cos(), b.sin()));
        if let CircleOrLine::Circle { center, radius } = orthogonal_circle_through(&x, r, &y, &z).unwrap() {
            let res = center.dist(&x).powi(2) - r * r - radius * radius;
            prop_assert!(res.abs() <= 1e-10 * center.dist(&x).powi(2).max(1.0));
        }
    }

    #[test]
    fn apollonian_symmetry_and_nesting(x in point2(), y in point2(), c in 0.05..0.95f64, c2 in 0.05..0.95f64) {
        prop_assume!(x.dist(&y) > 1e-3);
        let b1 = apollonian_boundary(&x, &y, c).unwrap();
        let b2 = apollonian_boundary(&y, &x, 1.0 / c).unwrap();
        let (p1, r1) = b1.center_radius().unwrap();
        let (p2, r2) = b2.center_radius().unwrap();
        prop_assert!(p1.dist(p2) <= 1e-10 * p1.norm().max(1.0));
        prop_assert!((r1 - r2).abs() <= 1e-10 * r1.max(1.0));
        let (lo, hi) = if c < c2 { (c, c2) } else { (c2, c) };
        prop_assume!(hi - lo > 1e-6);
        for p in apollonian_boundary(&x, &y, lo).unwrap().sample(16, 1.0) {
            prop_assert!(x.dist(&p) < hi * y.dist(&p));
        }
    }

    #[test]
    fn bisector_is_an_apollonian_circle(x in point2(), y in point2()) {
        prop_assume!((x.norm() - y.norm()).abs() > 1e-3);
        let (x, y) = if x.norm() > y.norm() { (x, y) } else { (y, x) };
        let a = ((1.0 - x.norm_sq()) / (1.0 - y.norm_sq())).sqrt();
        let b = bisector_disk(&x, &y).unwrap();
        let ap = apollonian_boundary(&x, &y, a).unwrap();
        let (w1, r1) = b.center_radius().unwrap();
        let (w2, r2) = ap.center_radius().unwrap();
        prop_assert!(w1.dist(w2) <= 1e-10 * w1.norm().max(1.0));
        prop_assert!((r1 - r2).abs() <= 1e-10 * r1.max(1.0));
        for p in b.sample(24, 1.0) {
            if p.norm_sq() < 0.999 {
                prop_assert!((rho_ball(&x, &p).unwrap() - rho_ball(&y, &p).unwrap()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn half_bisector_is_an_apollonian_circle(x in half2(), y in half2()) {
        prop_assume!((x.height() - y.height()).abs() > 1e-3);
        let a = (x.height() / y.height()).sqrt();
        let b = bisector_half(&x, &y).unwrap();
        let ap = apollonian_boundary(x.point(), y.point(), a).unwrap();
        let (w1, r1) = b.center_radius().unwrap();
        let (w2, r2) = ap.center_radius().unwrap();
        prop_assert!(w1.dist(w2) <= 1e-10 * w1.norm().max(r1).max(1.0));
        prop_assert!((r1 - r2).abs() <= 1e-10 * r1.max(1.0));
        for p in b.sample(24, 1.0) {
            if p.last() > 1e-3 {
                let p = HalfSpacePoint::new(p).unwrap();
                prop_assert!((rho_half(&x, &p).unwrap() - rho_half(&y, &p).unwrap()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn metric_balls_have_the_right_radius(x in point2(), r in 0.01..5.0f64) {
        let view = ball_to_euclidean(&x, r).unwrap();
        prop_assert!(view.euclidean_center.norm() + view.euclidean_radius < 1.0);
        let sphere = sphere_to_apollonian(&x, r).unwrap().boundary().unwrap();
        let (c, s) = sphere.center_radius().unwrap();
        prop_assert!(c.dist(&view.euclidean_center) < 1e-12 * c.norm().max(1.0) / (1.0 - x.norm()));
        prop_assert!((s - view.euclidean_radius).abs() < 1e-12 / (1.0 - x.norm()));
        for p in view.sphere().unwrap().sample(12, 1.0) {
            let g = 1.0 - p.norm_sq();
            prop_assume!(g > 1e-6);
            prop_assert!((rho_ball(&x, &p).unwrap() - r).abs() < 1e-10 * (1.0 / g).max(1.0));
        }
    }

    #[test]
    fn origin_midpoint_matches_general(s in 0.001..0.999f64) {
        let x = Point::xy(s, 0.0);
        let a = midpoint_origin_special(&x).unwrap();
        let b = midpoint_disk(&Point::xy(0.0, 0.0), &x).unwrap();
        prop_assert!(a.dist(&b) < 1e-12);
    }

    #[test]
    fn bisect_record_is_symmetric(x in point2(), y in point2()) {
        prop_assume!(x.dist(&y) > 1e-6);
        let a = bisect_construction(&x, &y).unwrap();
        let b = bisect_construction(&y, &x).unwrap();
        prop_assert!(a.midpoint.dist(&b.midpoint) < 1e-9);
        let m = midpoint_disk(&x, &y).unwrap();
        prop_assert!(a.midpoint.dist(&m) < 1e-10);
        prop_assert!(a.bisector.distance_to(&m) < 1e-10 * a.bisector.center_radius().map_or(1.0, |(_, r)| r.max(1.0)));
        prop_assert!(a.carrier.distance_to(&m) < 1e-10 * a.carrier.center_radius().map_or(1.0, |(_, r)| r.max(1.0)));
    }
}

#[test]
fn basic_sqrt_inequality() {
    for i in 0..=10_000 {
        let u = i as f64 / 10_000.0;
        assert!((1.0 - u).sqrt() <= 1.0 - u / 2.0 + 1e-16);
    }
}

#[test]
fn scalar_bounds_chain() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let t = scalar_sqrt_bounds(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)).unwrap();
        assert!(t.holds(1e-14), "{t:?}");
    }
}

#[test]
fn absolute_ratio_distance_matches_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..300 {
        let (x, y) = (in_ball(&mut rng, 2, ball_radius(i)), in_ball(&mut rng, 2, ball_radius(i)));
        let exact = rho_ball(&x, &y).unwrap();
        let v = rho_sup_absratio(&x, &y, 200).unwrap();
        assert!((v - exact).abs() <= 1e-10 * exact.max(1.0), "{x} {y}: {v} vs {exact}");
    }
}

#[test]
fn midpoints_and_carriers_in_the_disk() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..10_000 {
        let x = in_ball(&mut rng, 2, ball_radius(i));
        // Every fourth pair has nearly equal moduli.
        let y = if i % 4 == 0 {
            let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            let s = (x.norm() - 10f64.powf(rng.random_range(-8.0..-2.0))).max(0.0);
            Point::xy(s * t.cos(), s * t.sin())
        } else {
            in_ball(&mut rng, 2, ball_radius(i / 3))
        };
        let rho = rho_ball(&x, &y).unwrap();
        let z = midpoint_disk(&x, &y).unwrap();
        let (a, b) = (rho_ball(&x, &z).unwrap(), rho_ball(&y, &z).unwrap());
        assert!((a - b).abs() <= 1e-10, "{x} {y}: {a} {b}");
        assert!((a - rho / 2.0).abs() <= 1e-10, "{x} {y}: {a} {rho}");
        let g = geodesic_disk(&x, &y).unwrap();
        let scale = g.carrier.center_radius().map_or(1.0, |(_, r)| r.max(1.0));
        assert!(g.carrier.distance_to(&z) <= 1e-10 * scale, "{x} {y}");
        for p in [&g.ideal_x, &g.ideal_y] {
            let p = p.finite().unwrap();
            assert!((p.norm() - 1.0).abs() < 1e-10 && g.carrier.distance_to(p) < 1e-10 * scale);
        }
    }
}

#[test]
fn ideal_points_are_ordered() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..2000 {
        let (x, y) = (in_ball(&mut rng, 2, ball_radius(i)), in_ball(&mut rng, 2, ball_radius(i)));
        let g = geodesic_disk(&x, &y).unwrap();
        let (xp, yp) = (g.ideal_x.finite().unwrap(), g.ideal_y.finite().unwrap());
        // Along the carrier x′, x, y, y′: x is the nearer to x′ and the absolute ratio exceeds 1.
        let r = absolute_ratio(&g.ideal_x, &x.clone().into(), &y.clone().into(), &g.ideal_y).unwrap();
        assert!(r >= 1.0);
        assert!(xp.dist(&x) <= xp.dist(&y) && yp.dist(&y) <= yp.dist(&x));
    }
}

#[test]
fn midpoints_in_higher_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..2000 {
        let (x, y) = (in_ball(&mut rng, 3, ball_radius(i)), in_ball(&mut rng, 3, ball_radius(i)));
        let z = midpoint_disk(&x, &y).unwrap();
        let h = rho_ball(&x, &y).unwrap() / 2.0;
        assert!((rho_ball(&x, &z).unwrap() - h).abs() <= 1e-10);
        let (u, v) = (in_half(&mut rng, 3), in_half(&mut rng, 3));
        let w = HalfSpacePoint::new(midpoint_half(&u, &v).unwrap()).unwrap();
        let h = rho_half(&u, &v).unwrap() / 2.0;
        assert!((rho_half(&u, &w).unwrap() - h).abs() <= 1e-10);
        assert!((rho_half(&v, &w).unwrap() - h).abs() <= 1e-10);
    }
}

#[test]
fn half_plane_geodesics_and_midpoints() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10_000 {
        let (x, y) = (in_half(&mut rng, 2), in_half(&mut rng, 2));
        let g = geodesic_half(&x, &y).unwrap();
        let scale = g.carrier.center_radius().map_or(1.0, |(c, r)| r.max(c.norm()).max(1.0));
        assert!(g.carrier.distance_to(x.point()) < 1e-12 * scale);
        assert!(g.carrier.distance_to(y.point()) < 1e-12 * scale);
        let z = midpoint_half(&x, &y).unwrap();
        assert!(g.carrier.distance_to(&z) < 1e-10 * scale);
        let z = HalfSpacePoint::new(z).unwrap();
        let rho = rho_half(&x, &y).unwrap();
        let (a, b) = (rho_half(&x, &z).unwrap(), rho_half(&y, &z).unwrap());
        assert!((a - b).abs() <= 1e-10 && (a - rho / 2.0).abs() <= 1e-10);
    }
}

#[test]
fn geodesic_lengths_by_quadrature() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let r = [0.9, 0.99, 0.999][i % 3];
        let (x, y) = (in_ball(&mut rng, 2, r), in_ball(&mut rng, 2, r));
        let g = geodesic_disk(&x, &y).unwrap();
        let l = path_length_quadrature(&g.path(), WeightFunction::Ball, 1e-10).unwrap();
        let rho = rho_ball(&x, &y).unwrap();
        assert!((l - rho).abs() < 1e-8, "{x} {y}: {l} vs {rho}");
        // A detour through a third point is longer.
        let w = in_ball(&mut rng, 2, 0.9);
        let detour = Path::Chain(vec![
            Path::Segment { from: x.clone(), to: w.clone() },
            Path::Segment { from: w, to: y.clone() },
        ]);
        assert!(path_length_quadrature(&detour, WeightFunction::Ball, 1e-10).unwrap() > rho - 1e-8);
        let (u, v) = (in_half(&mut rng, 2), in_half(&mut rng, 2));
        let g = geodesic_half(&u, &v).unwrap();
        let l = path_length_quadrature(&g.path(), WeightFunction::HalfSpace, 1e-10).unwrap();
        assert!((l - rho_half(&u, &v).unwrap()).abs() < 1e-8);
    }
}

#[test]
fn automorphisms_and_model_transfer_preserve_distance() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..10_000 {
        let (x, y) = (in_ball(&mut rng, 2, ball_radius(i)), in_ball(&mut rng, 2, ball_radius(i)));
        let z0 = in_ball(&mut rng, 2, 0.99).to_complex().unwrap();
        let t = disk_automorphism(z0, rng.random_range(0.0..std::f64::consts::TAU)).unwrap();
        let img = |p: &Point| Point::from_complex(t.apply(p.to_complex().unwrap()).unwrap());
        let (tx, ty) = (img(&x), img(&y));
        if tx.norm_sq() >= 1.0 || ty.norm_sq() >= 1.0 {
            continue;
        }
        let rho = rho_ball(&x, &y).unwrap();
        let trho = rho_ball(&tx, &ty).unwrap();
        // Rounding the images perturbs ρ by about ε/(1 − |·|); allow that scale.
        let cond = 1.0 / (1.0 - tx.norm()).min(1.0 - ty.norm()).min(1.0 - x.norm()).min(1.0 - y.norm());
        assert!((rho - trho).abs() <= 1e-10f64.max(1e-15 * cond), "{x} {y}: {rho} vs {trho}");
    }
    for i in 0..2000 {
        let (x, y) = (in_ball(&mut rng, 2, ball_radius(i)), in_ball(&mut rng, 2, ball_radius(i)));
        let hd = rho_half(&disk_to_half(&x).unwrap(), &disk_to_half(&y).unwrap()).unwrap();
        assert!((hd - rho_ball(&x, &y).unwrap()).abs() <= 1e-10 * hd.max(1.0), "{x} {y}");
    }
}

#[test]
fn apollonian_distance_approximates_rho() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let circle = UnitCircleGrid { count: 10_000 };
    let line = HalfSpaceBoundary { dim: 2, count: 10_000 };
    for _ in 0..30 {
        let (x, y) = (in_ball(&mut rng, 2, 0.9), in_ball(&mut rng, 2, 0.9));
        let a = apollonian_distance(&x, &y, &circle).unwrap();
        let rho = rho_ball(&x, &y).unwrap();
        assert!(a <= rho + 1e-12 && rho - a < 1e-3, "{x} {y}: {a} vs {rho}");
        let (u, v) = (in_half(&mut rng, 2), in_half(&mut rng, 2));
        let a = apollonian_distance(u.point(), v.point(), &line).unwrap();
        let rho = rho_half(&u, &v).unwrap();
        assert!(a <= rho + 1e-12 && rho - a < 1e-3, "{u} {v}: {a} vs {rho}");
    }
}

#[test]
fn apollonian_distance_in_three_dimensions() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let sphere = FibonacciSphere { count: 20_000 };
    let plane = HalfSpaceBoundary { dim: 3, count: 40_000 };
    for _ in 0..5 {
        let (x, y) = (in_ball(&mut rng, 3, 0.8), in_ball(&mut rng, 3, 0.8));
        let a = apollonian_distance(&x, &y, &sphere).unwrap();
        let rho = rho_ball(&x, &y).unwrap();
        assert!(a <= rho + 1e-12 && rho - a < 1e-3, "{x} {y}: {a} vs {rho}");
        let (u, v) = (in_half(&mut rng, 3), in_half(&mut rng, 3));
        let a = apollonian_distance(u.point(), v.point(), &plane).unwrap();
        let rho = rho_half(&u, &v).unwrap();
        assert!(a <= rho + 1e-12 && rho - a < 1e-2, "{u} {v}: {a} vs {rho}");
    }
}

#[test]
fn apollonian_triangle_inequality_and_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let grid = UnitCircleGrid { count: 4096 };
    for _ in 0..50 {
        let p: Vec<Point> = (0..3).map(|_| in_ball(&mut rng, 2, 0.9)).collect();
        let d = |a: &Point, b: &Point| apollonian_distance(a, b, &grid).unwrap();
        assert!(d(&p[0], &p[1]) <= d(&p[0], &p[2]) + d(&p[2], &p[1]) + 1e-9);
        // Doubling a grid keeps its points, so raw maxima cannot decrease.
        let coarse = apollonian_parameters_raw(&p[0], &p[1], &UnitCircleGrid { count: 512 }).unwrap();
        let fine = apollonian_parameters_raw(&p[0], &p[1], &UnitCircleGrid { count: 1024 }).unwrap();
        assert!(fine.sup_x >= coarse.sup_x && fine.sup_y >= coarse.sup_y);
        let refined = apollonian_parameters(&p[0], &p[1], &UnitCircleGrid { count: 512 }).unwrap();
        assert!(refined.sup_x >= coarse.sup_x && refined.sup_y >= coarse.sup_y);
        for w in [&refined.witness_a, &refined.witness_d] {
            assert!((w.finite().unwrap().norm() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn bounds_are_valid_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..20_000 {
        let n = 2 + i % 2;
        let (x, y) = (in_ball(&mut rng, n, ball_radius(i / 2)), in_ball(&mut rng, n, ball_radius(i / 2)));
        let r = ball_full_report(&x, &y).unwrap();
        for e in &r.entries {
            assert!(e.is_valid(1e-12), "{x} {y}: {e:?}");
        }
        let o = constant_ordering(&x, &y).unwrap();
        assert!(o.c6_le_c5 && o.c3_le_c2, "{x} {y}: {o:?}");
        let (u, v) = (in_half(&mut rng, n), in_half(&mut rng, n));
        let h = half_lower_bounds(&u, &v).unwrap();
        assert!(h.all_valid(1e-12), "{u} {v}: {h:?}");
        assert!(h.value("h3").unwrap() >= h.value("h3'").unwrap() - 1e-15);
        let (h1, h2) = (h.value("h1").unwrap(), h.value("h2").unwrap());
        let s = u.height() + v.height();
        let dp = u.horizontal().dist(&v.horizontal());
        if (s - dp).abs() > 1e-12 * s.max(dp) {
            assert_eq!(h2 > h1, s < dp, "{u} {v}");
        }
    }
}
