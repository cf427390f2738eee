//! A reversible automaton circuit acting on a superposition. Amplitudes move
//! between basis states and are never mixed.
use eca_circuits::{
    simulate_statevector, synthesize, BoundaryCondition, Configuration, Rule, StateVector,
    SynthesisRequest,
};
use num_complex::Complex64;

fn main() -> eca_circuits::Result<()> {
    let n = 5;
    let c = synthesize(&SynthesisRequest::new(Rule::from_code(150), n, BoundaryCondition::Periodic)?)?;

    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0b00001] = Complex64::new(h, 0.0);
    amps[0b00110] = Complex64::new(0.0, h);
    let psi = StateVector::new(n, amps)?;

    let out = simulate_statevector(&c, &psi)?;
    for (k, a) in out.amplitudes().iter().enumerate() {
        if a.norm_sqr() > 0.0 {
            println!("{}  {a}", Configuration::from_index(k as u64, n)?);
        }
    }
    println!("norm before {:.17}, after {:.17}", psi.norm(), out.norm());

    let uniform = StateVector::uniform(n)?;
    let spread = simulate_statevector(&c, &uniform)?;
    println!("uniform superposition is fixed: {}", spread == uniform);
    Ok(())
}
