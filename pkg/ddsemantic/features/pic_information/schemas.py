"""
PIC Information Schemas
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ChannelPoint(BaseModel):
    """Operating point of the particle intensity channel"""

    model_config = ConfigDict(frozen=True, extra="forbid")

    p_i: float = Field(..., ge=0, le=1, description="Detection probability")
    n_particles: int = Field(..., ge=0, description="Particle budget N")
    mu_p: float = Field(1.0, ge=0, le=1, description="1 -> 0 crossover probability")
    tau: float = Field(..., gt=0, description="Symbol interval, s")

    @model_validator(mode="before")
    @classmethod
    def enforce_crossover(cls, data):
        # mu_p is always derived, whatever the caller passed
        if isinstance(data, dict) and "p_i" in data and "n_particles" in data:
            from ddsemantic.features.pic_information.service import crossover_probability

            data = dict(data)
            data["mu_p"] = crossover_probability(float(data["p_i"]), int(data["n_particles"]))
        return data


class OptimalInput(BaseModel):
    """Capacity-achieving input of the Z channel"""

    model_config = ConfigDict(frozen=True)

    p1_star: float = Field(..., ge=0, le=0.5)
    capacity: float = Field(..., ge=0, description="bits/s")
    mutual_info_bits: float = Field(..., ge=0, description="bits per channel use")
