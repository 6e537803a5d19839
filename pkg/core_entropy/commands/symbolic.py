"""
kneading and address subcommands
"""

from core_entropy.commands.output import Artifact
from core_entropy.models.kneading import KneadingSequence
from core_entropy.schemas.results import AddressOutput, KneadingOutput
from core_entropy.schemas.run_config import RunConfig
from core_entropy.services.angle_service import is_recurrent_angle, kneading_of_angle, orbit_shape
from core_entropy.services.symbolic_service import internal_address, is_bifurcation, upper_lower
from core_entropy.utils.parsing import parse_angle, parse_sequence


def sequence_from_config(config: RunConfig) -> KneadingSequence:
    """--seq wins over --angle; one of them is required"""
    if config.sequence:
        return parse_sequence(config.sequence)
    if config.angle:
        return kneading_of_angle(parse_angle(config.angle))
    raise ValueError(f"{config.command.value} needs --seq or --angle")


def kneading_command(config: RunConfig) -> Artifact:
    if not config.angle:
        raise ValueError("kneading needs --angle")
    theta = parse_angle(config.angle)
    nu = kneading_of_angle(theta)
    shape = orbit_shape(theta)
    output = KneadingOutput(
        angle=theta.text,
        sequence=nu.text,
        preperiod=shape.preperiod,
        period=shape.period,
        recurrent_angle=is_recurrent_angle(theta),
    )
    return Artifact(data=output.model_dump())


def address_command(config: RunConfig) -> Artifact:
    nu = sequence_from_config(config)
    address = internal_address(nu, config.max_terms)
    upper = lower = None
    bifurcation = None
    if nu.is_star_periodic:
        up, low = upper_lower(nu)
        upper, lower = up.text, low.text
        bifurcation = is_bifurcation(nu)
    output = AddressOutput(
        sequence=nu.text,
        address=address.text,
        truncated=address.truncated,
        upper=upper,
        lower=lower,
        bifurcation_period=bifurcation,
    )
    return Artifact(data=output.model_dump())
