#![no_main]

use apollonia::bounds::{ball_full_report, half_lower_bounds, constant_ordering};
use apollonia::disk::{bisect_construction, bisector_disk, geodesic_disk, midpoint_disk, rho_ball, sphere_to_apollonian};
use apollonia::half::{bisector_half, geodesic_half, midpoint_half, rho_half, HalfSpacePoint};
use apollonia::Point;
use libfuzzer_sys::fuzz_target;

// Layout: one dimension byte, then little-endian f64 coordinates for x, y and a radius.
fuzz_target!(|data: &[u8]| {
    let Some((&d, rest)) = data.split_first() else {
        return;
    };
    let n = 2 + usize::from(d % 3);
    let floats: Vec<f64> = rest
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if floats.len() < 2 * n + 1 {
        return;
    }
    let (Ok(x), Ok(y)) = (Point::new(floats[..n].to_vec()), Point::new(floats[n..2 * n].to_vec())) else {
        return;
    };
    let r = floats[2 * n];

    if let Ok(rho) = rho_ball(&x, &y) {
        assert!(rho >= 0.0 || rho.is_nan());
    }
    let _ = geodesic_disk(&x, &y);
    let _ = bisector_disk(&x, &y);
    let _ = midpoint_disk(&x, &y);
    let _ = bisect_construction(&x, &y);
    let _ = ball_full_report(&x, &y);
    let _ = constant_ordering(&x, &y);
    let _ = sphere_to_apollonian(&x, r);

    if let (Ok(hx), Ok(hy)) = (HalfSpacePoint::new(x), HalfSpacePoint::new(y)) {
        let _ = rho_half(&hx, &hy);
        let _ = geodesic_half(&hx, &hy);
        let _ = bisector_half(&hx, &hy);
        let _ = midpoint_half(&hx, &hy);
        let _ = half_lower_bounds(&hx, &hy);
    }
});
