use qteleport::ensemble::{average, QuadratureGrid};
use qteleport::noise::{Arrangement, ProbAxis};
use qteleport::protocol::ChannelParams;
use qteleport::sweep::{run_census, CensusOptions};

fn main() {
    // Hand-check (BF 0.25, none, PF 0.75).
    let arr = {
        let a = ProbAxis::Input.with_p(&Arrangement::parse_code("BF,NONE,PF").unwrap(), 0.25);
        ProbAxis::Bob.with_p(&a, 0.75)
    };
    let grid = QuadratureGrid::default();
    let at = |t: f64, p: f64| average(&ChannelParams { theta: t, phi: p }, &arr, &grid).unwrap().f_det;
    println!("det at pi/4: {:.6} (hand: 0.458333)", at(std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_4));
    println!("det at corner (0,0): {:.6} (hand: 0.541667)", at(0.0, 0.0));

    // How many no-AD census evaluations have corner deterministic optima?
    let report = run_census(&CensusOptions::default()).unwrap();
    let mut corner = 0;
    let mut interior = 0;
    for case in &report.cases {
        if case.has_amplitude_damping() { continue; }
        for eval in &case.evaluations {
            let t = eval.classification.deterministic.theta_star;
            if qteleport::protocol::channel_concurrence(t) <= 0.01 {
                corner += 1;
                let pi4 = at_arr(&eval.arrangement);
                let det = eval.classification.deterministic.value;
                assert!(pi4 <= det + 1e-9, "{}: pi/4 {} beats corner {}", eval.arrangement, pi4, det);
            } else {
                interior += 1;
                assert!((t - std::f64::consts::FRAC_PI_4).abs() <= 1e-3, "{}: theta* {}", eval.arrangement, t);
            }
        }
    }
    println!("no-AD det optima: {interior} at pi/4, {corner} at classical corners");

    fn at_arr(arr: &Arrangement) -> f64 {
        average(&ChannelParams::standard(), arr, &QuadratureGrid::default()).unwrap().f_det
    }
}
