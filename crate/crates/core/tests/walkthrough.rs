use growth_core::asymptotics::{fit_asymptotic_model, variance_report};
use growth_core::series::bn_sequence;
use growth_core::spectral::classify_classes;
use growth_core::{build_family, expand_to_depth, FamilySpec};

#[test]
fn fibonacci_walkthrough() -> growth_core::Result<()> {
    let gp = build_family(&FamilySpec::Fibonacci)?;
    let b = bn_sequence(&gp, 30)?;
    assert_eq!(b.integers().unwrap()[..5], [1, 1, 2, 3, 5].map(Into::into));
    let t = expand_to_depth(&gp, 1)?;
    let summary = classify_classes(&t, 1e-10)?;
    assert_eq!(summary.basic_classes().len(), 1);
    let model = fit_asymptotic_model(&gp, &[1], 1e-12)?;
    let report = variance_report(&gp, &model, 30)?;
    assert!(!report.to_csv().is_empty());
    Ok(())
}
