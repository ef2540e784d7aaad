"""
Database Models for the sweep ledger

Sweep reports can be persisted so that runs over time (different catalogs,
caps, Sylow modes) can be compared. The schema is deliberately small:

Key Models:
- SweepRun: one execution of the exhaustive sweep with its totals
- SweepCaseRecord: one (G, K) case of a run
"""

from datetime import datetime, timezone

from flask_sqlalchemy import SQLAlchemy
from sqlalchemy.orm import validates

from frattini import SYLOW_MODES

# Initialize SQLAlchemy
db = SQLAlchemy()


class TimestampMixin:
    """Mixin to add timestamp fields to models."""
    created_at = db.Column(db.DateTime, default=lambda: datetime.now(timezone.utc), nullable=False)
    updated_at = db.Column(db.DateTime, default=lambda: datetime.now(timezone.utc),
                           onupdate=lambda: datetime.now(timezone.utc), nullable=False)


class SweepRun(db.Model, TimestampMixin):
    """
    SweepRun model - totals of one sweep over a group catalog.

    ``catalog`` stores the group names in sweep order.
    """
    __tablename__ = 'sweep_runs'

    id = db.Column(db.Integer, primary_key=True)
    max_order = db.Column(db.Integer, nullable=False)
    sylow_mode = db.Column(db.String(20), nullable=False, default='all')
    audited = db.Column(db.Boolean, nullable=False, default=False)
    group_count = db.Column(db.Integer, nullable=False)
    subgroup_count = db.Column(db.Integer, nullable=False)
    inconsistencies = db.Column(db.Integer, nullable=False)
    audit_failures = db.Column(db.Integer, nullable=False, default=0)
    runtime_seconds = db.Column(db.Float, nullable=False)
    catalog = db.Column(db.JSON)

    cases = db.relationship("SweepCaseRecord", back_populates="run", cascade="all, delete-orphan",
                            order_by="SweepCaseRecord.id")

    __table_args__ = (
        db.Index('idx_sweep_run_inconsistencies', inconsistencies),
    )

    @validates('sylow_mode')
    def validate_sylow_mode(self, key, sylow_mode):
        """Validate Sylow mode."""
        if sylow_mode not in SYLOW_MODES:
            raise ValueError(f"Sylow mode must be one of: {', '.join(SYLOW_MODES)}")
        return sylow_mode

    @classmethod
    def from_report(cls, report, sylow_mode='all'):
        """
        Build a run (with its cases) from a SweepReport.

        Args:
            report (SweepReport): finished sweep
            sylow_mode (str): mode the sweep ran with

        Returns:
            SweepRun: unsaved run
        """
        run = cls(
            max_order=report.max_order,
            sylow_mode=sylow_mode,
            audited=report.audited,
            group_count=report.group_count,
            subgroup_count=report.subgroup_count,
            inconsistencies=report.inconsistencies,
            audit_failures=report.audit_failures,
            runtime_seconds=report.runtime,
            catalog=list(dict.fromkeys(c.group_name for c in report.cases)),
        )
        run.cases = [SweepCaseRecord(
            group_name=c.group_name,
            group_order=c.group_order,
            fingerprint=c.fingerprint,
            subgroup_order=c.subgroup_order,
            condition_holds=c.condition_holds,
            normal=c.normal,
            consistent=c.consistent,
            audit_ok=c.audit_ok,
        ) for c in report.cases]
        return run

    def to_dict(self):
        return {
            'id': self.id,
            'created_at': self.created_at.isoformat() if self.created_at else None,
            'max_order': self.max_order,
            'sylow_mode': self.sylow_mode,
            'audited': self.audited,
            'group_count': self.group_count,
            'subgroup_count': self.subgroup_count,
            'inconsistencies': self.inconsistencies,
            'audit_failures': self.audit_failures,
            'runtime_seconds': self.runtime_seconds,
            'catalog': self.catalog,
        }

    def __repr__(self):
        return f"<SweepRun(id={self.id}, groups={self.group_count}, inconsistencies={self.inconsistencies})>"


class SweepCaseRecord(db.Model):
    """SweepCaseRecord model - one subgroup K of one group G within a run."""
    __tablename__ = 'sweep_cases'

    id = db.Column(db.Integer, primary_key=True)
    run_id = db.Column(db.Integer, db.ForeignKey('sweep_runs.id', ondelete='CASCADE'), nullable=False)
    group_name = db.Column(db.String(100), nullable=False)
    group_order = db.Column(db.Integer, nullable=False)
    fingerprint = db.Column(db.String(40), nullable=False)
    subgroup_order = db.Column(db.Integer, nullable=False)
    condition_holds = db.Column(db.Boolean, nullable=False)
    normal = db.Column(db.Boolean, nullable=False)
    consistent = db.Column(db.Boolean, nullable=False)
    audit_ok = db.Column(db.Boolean, nullable=False, default=True)

    run = db.relationship("SweepRun", back_populates="cases")

    __table_args__ = (
        db.Index('idx_sweep_case_run_group', run_id, group_name),
        db.Index('idx_sweep_case_consistent', consistent),
    )

    def __repr__(self):
        return f"<SweepCaseRecord(group='{self.group_name}', order={self.subgroup_order}, consistent={self.consistent})>"


def record_sweep(report, sylow_mode='all'):
    """
    Persist a sweep report in the current application's database.

    Args:
        report (SweepReport): finished sweep
        sylow_mode (str): mode the sweep ran with

    Returns:
        SweepRun: the committed run
    """
    run = SweepRun.from_report(report, sylow_mode)
    db.session.add(run)
    db.session.commit()
    return run


def recent_runs(limit=20):
    """Most recent sweep runs first."""
    return SweepRun.query.order_by(SweepRun.id.desc()).limit(limit).all()
