//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Used as an independent numerical check for closed-form integrals and for
//! coefficient tables; it is not on any evaluation hot path.

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kron * half,
        error: ((kron - gauss) * half).abs(),
    }
}

/// Integrate `f` over `[a, b]` until the summed error estimate drops below
/// `max(abs_tol, rel_tol * |value|)` or `max_segments` is reached.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Quadrature {
    if a == b {
        return Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    let mut segments = vec![kronrod(&mut f, a, b)];
    let mut evaluations = 15;
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        let target = abs_tol.max(rel_tol * value.abs());
        if error <= target || segments.len() >= max_segments {
            return Quadrature {
                value,
                error_estimate: error,
                evaluations,
                converged: error <= target,
            };
        }
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one segment");
        let s = segments.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        segments.push(kronrod(&mut f, s.a, mid));
        segments.push(kronrod(&mut f, mid, s.b));
        evaluations += 30;
    }
}

/// [`integrate`] over consecutive breakpoints, e.g. to isolate peaks.
pub fn integrate_pieces<F: FnMut(f64) -> f64>(
    mut f: F,
    breakpoints: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Quadrature {
    let mut total = Quadrature {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 0,
        converged: true,
    };
    for w in breakpoints.windows(2) {
        let q = integrate(&mut f, w[0], w[1], abs_tol, rel_tol, 4000);
        total.value += q.value;
        total.error_estimate += q.error_estimate;
        total.evaluations += q.evaluations;
        total.converged &= q.converged;
    }
    total
}
