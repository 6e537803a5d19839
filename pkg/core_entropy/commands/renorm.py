"""
renorm subcommand
"""

from core_entropy.commands.output import Artifact
from core_entropy.commands.symbolic import sequence_from_config
from core_entropy.schemas.results import CertificateOutput, RenormOutput
from core_entropy.schemas.run_config import RunConfig
from core_entropy.services.renormalization_service import (
    detect_renormalizable,
    entropy_identity_check,
    maximal_base_chain,
)


def renorm_command(config: RunConfig) -> Artifact:
    nu = sequence_from_config(config)
    certificates = detect_renormalizable(nu, config.p_max)

    outputs = []
    failed = False
    for certificate in certificates:
        identity = None
        # uncertified periods are reported but never held to the identity
        if certificate.certified:
            identity = entropy_identity_check(nu, certificate, strict=False)
            failed = failed or not identity.passed
        outputs.append(CertificateOutput.from_certificate(certificate, identity))

    output = RenormOutput(
        sequence=nu.text,
        certificates=outputs,
        maximal_base_chain=[c.p for c in maximal_base_chain(nu)],
    )
    rows = [
        {key: value for key, value in c.model_dump().items() if key != "identity"}
        for c in outputs
    ]
    return Artifact(
        data=output.model_dump(),
        rows=rows,
        columns=["p", "base", "dynamical", "dynamical_projection", "eta", "certified"],
        exit_code=1 if failed else 0,
    )
