#!/usr/bin/env python3
"""Regenerate the bundled seed catalog (src/authn_catalog/data/seed_catalog.json).

The seed holds 34 authenticators and 33 techniques. Most entries carry
only their fundamental facets and are marked `partial`; the PIN and
touch-interaction authenticators and the context-aware touch technique
are classified on every facet and marked `complete`.
"""

from __future__ import annotations

import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import datetime

from authn_catalog.authn_schemas import (
    AuthenticatorEntry,
    Employment,
    Reference,
    ReviewRecord,
    TechniqueEntry,
)
from authn_catalog.catalog_store import new_document, save
from authn_catalog.facet_model import FacetAssignment

OUT = Path(__file__).resolve().parents[1] / "src" / "authn_catalog" / "data" / "seed_catalog.json"

REFERENCE = Reference(
    title="Seed catalog of authenticators and authentication techniques",
    venue="bundled dataset",
    year=2026,
)

REVIEWED = (
    ReviewRecord("ontological", "accepted", date=datetime.date(2026, 1, 20)),
    ReviewRecord("uniqueness", "accepted", date=datetime.date(2026, 1, 20)),
)


def slugify(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "-", name.lower()).strip("-")


# name, factor path, description
AUTHENTICATORS = [
    ("Handwriting features", "inherence-based.behavioral",
     "Distinctive motion and shape characteristics of a person's handwriting."),
    ("Keystroke rhythm", "inherence-based.behavioral",
     "Timing and rhythm patterns of a person's typing."),
    ("Hand micro-movement patterns", "inherence-based.behavioral",
     "Involuntary fine movements of the hand while holding or operating a device."),
    ("Touch-interaction behavior", "inherence-based.behavioral",
     "Touch rhythm, gesture habits, and keystroke dynamics shown while operating a touchscreen."),
    ("Vertical foot acceleration patterns", "inherence-based.behavioral",
     "Vertical acceleration patterns of the foot while walking, captured by motion sensors."),
    ("Facial feature patterns", "inherence-based.physiological",
     "Geometric and textural patterns of the face used for visual recognition."),
    ("Fingerprint features", "inherence-based.physiological",
     "Ridge and minutiae features of a fingertip."),
    ("Physiological hand features", "inherence-based.physiological",
     "Anatomical hand measurements such as geometry and surface features."),
    ("Heartbeat patterns", "inherence-based.physiological",
     "Cardiac motion patterns observable on the body surface."),
    ("Brain activity patterns", "inherence-based.physiological",
     "Electrical brain activity patterns recorded by an electroencephalogram."),
    ("Photoplethysmogram (PPG) pulse patterns", "inherence-based.physiological",
     "Blood-volume pulse waveforms measured optically at the skin."),
    ("Pulse Active Ratio (PAR) patterns", "inherence-based.physiological",
     "Pulse active ratio characteristics derived from an electrocardiogram signal."),
    ("Iris patterns", "inherence-based.physiological",
     "Texture patterns of the iris."),
    ("Group signature certificate", "possession-based.digital",
     "A group signature credential proving membership without revealing the individual signer."),
    ("Private cryptographic key with digital certificate", "possession-based.digital",
     "A private key whose public counterpart is bound to an identity by a digital certificate."),
    ("Initialization key", "possession-based.digital",
     "A shared secret key from which one-time passwords are derived algorithmically."),
    ("Private cryptographic key", "possession-based.digital",
     "A private key held by the subject and used to sign verifier challenges."),
    ("Unique carrier frequency offset characteristics", "possession-based.physical",
     "Hardware-specific carrier frequency offset characteristics of a radio transmitter."),
    ("DRAM chip initialization patterns", "possession-based.physical",
     "Power-up memory cell patterns of a DRAM chip acting as a physically unclonable function."),
    ("Hardware OTP Token", "possession-based.physical",
     "A dedicated hardware device that generates one-time passwords."),
    ("Smart Card", "possession-based.physical",
     "A chip card that holds credentials and performs cryptographic operations."),
    ("RFID tag", "possession-based.physical",
     "A radio-frequency identification tag presented to a reader."),
    ("Spatio-temporal graphical password", "knowledge-based.associative",
     "A secret sequence of picture locations combined with timing between selections."),
    ("Gaze password", "knowledge-based.associative",
     "A secret sequence of gaze targets entered by eye movement."),
    ("Textual password", "knowledge-based.free-recall",
     "A secret character string memorized by the subject."),
    ("PIN", "knowledge-based.free-recall",
     "A personal identification number: a short numeric secret memorized by the subject."),
    ("Hand vein pattern", "inherence-based.physiological",
     "Vascular patterns of the hand visible under infrared imaging."),
    ("Knuckle shape", "inherence-based.physiological",
     "Shape and texture of the finger knuckles."),
    ("Neuromuscular biometrics", "inherence-based.physiological",
     "Neuromuscular signal characteristics measured during muscle activity."),
    ("Facial features", "inherence-based.physiological",
     "Facial appearance characteristics captured from camera images."),
    ("Voice features", "inherence-based.physiological",
     "Acoustic characteristics of a person's voice."),
    ("Teeth image", "inherence-based.physiological",
     "Visual appearance of the teeth captured by a camera."),
    ("Temporal pattern", "inherence-based.behavioral",
     "The timing structure of a user-performed input sequence."),
    ("Behavioral features of rhythm input", "inherence-based.behavioral",
     "Motor behavior characteristics exhibited while tapping a rhythm."),
]

# name, employment path, factor, employed authenticator names, description
TECHNIQUES = [
    ("Air Handwriting Authentication", "single", "inherence-based",
     ["Handwriting features"],
     "Verifies identity from handwriting motion performed in the air."),
    ("Free-text Keystroke Rhythm Authentication", "single", "inherence-based",
     ["Keystroke rhythm"],
     "Verifies identity from typing rhythm observed during free-form text entry."),
    ("Hand Micro-Movement Authentication", "single", "inherence-based",
     ["Hand micro-movement patterns"],
     "Verifies identity from involuntary hand micro-movements while holding a device."),
    ("Touch Interaction Behavior Authentication", "single", "inherence-based",
     ["Touch-interaction behavior"],
     "Verifies identity from how a person touches and gestures on a screen."),
    ("Vertical Acceleration Gait Authentication", "single", "inherence-based",
     ["Vertical foot acceleration patterns"],
     "Verifies identity from vertical foot acceleration during walking."),
    ("Face Feature Authentication", "single", "inherence-based",
     ["Facial feature patterns"],
     "Verifies identity by matching facial feature patterns."),
    ("Fingerprint Authentication", "single", "inherence-based",
     ["Fingerprint features"],
     "Verifies identity by matching fingerprint features."),
    ("Hand Physiology Authentication", "single", "inherence-based",
     ["Physiological hand features"],
     "Verifies identity from physiological hand measurements."),
    ("Heartprint mmWave Radar Authentication", "single", "inherence-based",
     ["Heartbeat patterns"],
     "Verifies identity from heartbeat patterns sensed with millimeter-wave radar."),
    ("Mobile EEG Authentication", "single", "inherence-based",
     ["Brain activity patterns"],
     "Verifies identity from brain activity recorded with a mobile EEG headset."),
    ("PPGPass Wearable Authentication", "single", "inherence-based",
     ["Photoplethysmogram (PPG) pulse patterns"],
     "Verifies identity from PPG pulse waveforms measured by a wearable."),
    ("Pulse Active Ratio (PAR) Electrocardiogram (ECG) Authentication", "single",
     "inherence-based", ["Pulse Active Ratio (PAR) patterns"],
     "Verifies identity from pulse active ratio features of an ECG signal."),
    ("User-Specific Iris Authentication", "single", "inherence-based",
     ["Iris patterns"],
     "Verifies identity by matching iris texture patterns."),
    ("Anonymous Group Signature Authentication for Vehicular Networks", "single",
     "possession-based", ["Group signature certificate"],
     "Authenticates vehicles as group members via group signatures without "
     "identifying the individual vehicle."),
    ("Certificate Authentication", "single", "possession-based",
     ["Private cryptographic key with digital certificate"],
     "Authenticates by proving possession of a private key bound to a digital certificate."),
    ("One-Time Password Authentication (software-based)", "single", "possession-based",
     ["Initialization key"],
     "Authenticates with one-time passwords generated by software from an initialization key."),
    ("Passkey Authentication", "single", "possession-based",
     ["Private cryptographic key"],
     "Authenticates by signing a verifier challenge with a device-resident private key."),
    ("Carrier Frequency Offset Authentication", "single", "possession-based",
     ["Unique carrier frequency offset characteristics"],
     "Authenticates a transmitter by its hardware-specific carrier frequency offset."),
    ("DRAM Physically Unclonable Function (PUF) Authentication", "single",
     "possession-based", ["DRAM chip initialization patterns"],
     "Authenticates a device from DRAM power-up patterns used as a physically "
     "unclonable function."),
    ("One-Time Password Authentication (hardware-based)", "single", "possession-based",
     ["Hardware OTP Token"],
     "Authenticates with one-time passwords generated by a dedicated hardware token."),
    ("Smart Card Authentication", "single", "possession-based",
     ["Smart Card"],
     "Authenticates by presenting a smart card and its on-card credentials."),
    ("Ultralight RFID Authentication", "single", "possession-based",
     ["RFID tag"],
     "Authenticates a tag with a lightweight RFID challenge protocol."),
    ("Cued Graphical Authentication with Timing Intervals", "single", "knowledge-based",
     ["Spatio-temporal graphical password"],
     "Authenticates with a graphical password whose cue selections include "
     "secret timing intervals."),
    ("Dynamic Gaze Password (DyGazePass) Authentication", "single", "knowledge-based",
     ["Gaze password"],
     "Authenticates with a gaze-entered password on dynamically arranged targets."),
    ("PassWalk Authentication", "single", "knowledge-based",
     ["Textual password"],
     "Authenticates with a textual password entered through an indirect input scheme."),
    ("PIN Authentication", "single", "knowledge-based",
     ["PIN"],
     "Authenticates with a personal identification number."),
    ("Text Password Authentication", "single", "knowledge-based",
     ["Textual password"],
     "Authenticates with a memorized textual password."),
    ("Hand Vein-Knuckle Authentication", "multi.parallel", "inherence-based",
     ["Hand vein pattern", "Knuckle shape"],
     "Authenticates by combining hand vein patterns and knuckle shape in parallel."),
    ("Neuromuscular Password Authentication", "multi.parallel", "multi-factor",
     ["Textual password", "Neuromuscular biometrics"],
     "Authenticates by combining a textual password with neuromuscular biometrics "
     "captured during entry."),
    # Both employed authenticators are inherence-based, so the factor
    # aggregation rule (C2) fixes this technique's factor to inherence-based.
    ("Multi-Sample Multi-Source Biometric Authentication", "multi.parallel",
     "inherence-based", ["Facial features", "Voice features"],
     "Authenticates by fusing multiple samples of facial and voice biometrics."),
    ("Voice-Teeth Multimodal Authentication", "multi.parallel", "inherence-based",
     ["Teeth image", "Voice features"],
     "Authenticates by combining teeth images and voice features captured with "
     "a smartphone."),
    ("Your Song Your Way Rhythm Authentication", "multi.parallel", "inherence-based",
     ["Temporal pattern", "Behavioral features of rhythm input"],
     "Authenticates by tapping a self-chosen song rhythm, combining its temporal "
     "pattern with tapping behavior."),
    ("Context-Aware Touch Authentication", "multi.sequential.ordered", "multi-factor",
     ["PIN", "Touch-interaction behavior"],
     "Authenticates with a PIN followed by behavioral touch verification that "
     "adapts to body posture context."),
]

COMPLETE_AUTHENTICATORS = {
    "pin": dict(
        assignment=FacetAssignment.of({
            "authentication-factor": "knowledge-based.free-recall",
            "interaction": ["active"],
            "subject": ["human"],
            "output": "static",
        }),
        reasons={
            "authentication-factor": "A PIN is secret information recalled from memory without cues.",
            "interaction": "Secret knowledge has to be entered deliberately by the subject.",
            "subject": "Entering and memorizing a PIN requires a human subject.",
            "output": "The produced output stays the same until the PIN is changed.",
        },
    ),
    "touch-interaction-behavior": dict(
        assignment=FacetAssignment.of({
            "authentication-factor": "inherence-based.behavioral",
            "interaction": ["active", "passive"],
            "subject": ["human"],
            "output": "dynamic",
        }),
        reasons={
            "authentication-factor": "Touch rhythm, gesture habits, and keystroke dynamics are behavioral traits.",
            "interaction": "Usable deliberately, and also collectable in the background during normal device use.",
            "subject": "Captures human touch and movement patterns.",
            "output": "Behavioral measurements differ from capture to capture.",
        },
    ),
}

CONTEXT_AWARE_TOUCH = dict(
    assignment=FacetAssignment.of({
        "authenticator-employment": "multi.sequential.ordered",
        "factor": "multi-factor",
        "contextuality": ["state-based"],
        "session-trust-contribution": ["establish"],
        "subject": ["human"],
        "subject-interaction": ["active", "passive"],
        "directionality": "unidirectional",
        "locality": "local",
        "privacy-preservation": "onymous",
        "revocability": "non-revocable",
        "uniqueness": "unique",
    }),
    reasons={
        "authenticator-employment": "The PIN gate runs first; the behavioral touch check runs after it.",
        "factor": "Combines a knowledge-based and an inherence-based authenticator.",
        "contextuality": "Body posture state is taken into account by the behavioral model.",
        "session-trust-contribution": "Access is decided at login; the session is not re-verified afterwards.",
        "subject": "Both employed authenticators target human subjects.",
        "subject-interaction": "The PIN is entered deliberately; touch behavior is collected in the background.",
        "directionality": "Only the subject proves its identity to the verifier.",
        "locality": "Verification happens on the device itself using built-in sensors.",
        "privacy-preservation": "The device identifies one specific registered owner.",
        "revocability": "The behavioral component cannot be replaced, so the technique as a whole cannot be revoked.",
        "uniqueness": "The combined check distinguishes one specific subject from impostors.",
    },
    interaction_used={"pin": ("active",), "touch-interaction-behavior": ("passive",)},
)


def build_authenticators() -> list[AuthenticatorEntry]:
    entries = []
    for name, factor, description in AUTHENTICATORS:
        entry_id = slugify(name)
        extras = COMPLETE_AUTHENTICATORS.get(entry_id)
        if extras:
            entries.append(AuthenticatorEntry(
                id=entry_id, name=name, description=description,
                reference=REFERENCE, classification_status="complete", **extras,
            ))
        else:
            entries.append(AuthenticatorEntry(
                id=entry_id, name=name, description=description,
                reference=REFERENCE,
                assignment=FacetAssignment.of({"authentication-factor": factor}),
            ))
    return entries


def build_techniques() -> list[TechniqueEntry]:
    entries = []
    for name, employment, factor, authenticators, description in TECHNIQUES:
        entry_id = slugify(name)
        if entry_id == "context-aware-touch-authentication":
            used = CONTEXT_AWARE_TOUCH["interaction_used"]
            employments = tuple(
                Employment(slugify(a), i + 1, used[slugify(a)])
                for i, a in enumerate(authenticators)
            )
            entries.append(TechniqueEntry(
                id=entry_id, name=name, description=description,
                reference=REFERENCE, classification_status="complete",
                assignment=CONTEXT_AWARE_TOUCH["assignment"],
                reasons=CONTEXT_AWARE_TOUCH["reasons"],
                employments=employments, reviews=REVIEWED,
            ))
            continue
        entries.append(TechniqueEntry(
            id=entry_id, name=name, description=description,
            reference=REFERENCE,
            assignment=FacetAssignment.of({
                "authenticator-employment": employment,
                "factor": factor,
            }),
            employments=tuple(
                Employment(slugify(a), i + 1) for i, a in enumerate(authenticators)
            ),
        ))
    return entries


def main() -> int:
    document = new_document(build_authenticators(), build_techniques())
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_bytes(save(document))
    print(f"wrote {OUT} "
          f"({len(document.authenticators)} authenticators, "
          f"{len(document.techniques)} techniques)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
