"""
Configuration Management for the Frattini toolkit

This module provides configuration classes for the command-line tools, the
JSON API and the test suite: enumeration limits, sweep defaults, logging and
the database used as the sweep ledger.
"""

import logging
import os
import re
from logging.handlers import RotatingFileHandler
from pathlib import Path

# Get the base directory of the application
basedir = Path(__file__).parent.absolute()


class Config:
    """Base configuration class with common settings."""

    # Enumeration limits
    ENUMERATION_CAP = int(os.environ.get('FRATTINI_ENUMERATION_CAP', 1_000_000))
    SUBGROUP_SWEEP_CAP = int(os.environ.get('FRATTINI_SUBGROUP_SWEEP_CAP', 200))

    # Sweep defaults
    SWEEP_MAX_ORDER = int(os.environ.get('FRATTINI_SWEEP_MAX_ORDER', 48))
    SWEEP_THREADS = int(os.environ.get('FRATTINI_SWEEP_THREADS', 1))

    # "all" quantifies over every Sylow subgroup; "representative" checks one per prime
    SYLOW_MODE = os.environ.get('FRATTINI_SYLOW_MODE', 'all')

    # Sweep ledger
    SQLALCHEMY_DATABASE_URI = os.environ.get('DATABASE_URL') or f'sqlite:///{basedir / "frattini_ledger.db"}'
    SQLALCHEMY_TRACK_MODIFICATIONS = False
    SQLALCHEMY_ECHO = False

    DEBUG = False
    TESTING = False
    JSON_SORT_KEYS = False

    # Logging settings
    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')
    LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

    @staticmethod
    def init_app(app):
        """Initialize application with this configuration."""
        pass

    @classmethod
    def init_logging(cls, level=None):
        """Configure root logging for command-line use."""
        logging.basicConfig(level=level or cls.LOG_LEVEL, format=cls.LOG_FORMAT)


class DevelopmentConfig(Config):
    """Development environment configuration."""

    DEBUG = True
    SQLALCHEMY_DATABASE_URI = os.environ.get('DEV_DATABASE_URL') or f'sqlite:///{basedir / "frattini_ledger_dev.db"}'


class ScriptConfig(DevelopmentConfig):
    """Configuration for command-line scripts - same as development but quieter."""

    DEBUG = False
    LOG_LEVEL = 'WARNING'

    @staticmethod
    def init_app(app):
        """Initialize script-specific settings."""
        Config.init_app(app)
        app.logger.setLevel(logging.WARNING)


class TestingConfig(Config):
    """Testing environment configuration."""

    TESTING = True

    # Use in-memory database for testing
    SQLALCHEMY_DATABASE_URI = 'sqlite:///:memory:'

    # Small enough that a runaway closure fails fast
    ENUMERATION_CAP = 100_000


class ProductionConfig(Config):
    """Production environment configuration."""

    SQLALCHEMY_DATABASE_URI = os.environ.get('DATABASE_URL') or f'sqlite:///{basedir / "frattini_ledger_prod.db"}'
    LOG_LEVEL = 'WARNING'

    @staticmethod
    def init_app(app):
        """Initialize production-specific settings."""
        Config.init_app(app)

        if not app.debug and not app.testing:
            logs_dir = basedir / 'logs'
            logs_dir.mkdir(exist_ok=True)

            file_handler = RotatingFileHandler(
                logs_dir / 'frattini.log',
                maxBytes=10240000,  # 10MB
                backupCount=10
            )
            file_handler.setFormatter(logging.Formatter(
                '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'
            ))
            file_handler.setLevel(logging.INFO)
            app.logger.addHandler(file_handler)

            app.logger.setLevel(logging.INFO)
            app.logger.info('Frattini service startup')


# Configuration dictionary
config = {
    'development': DevelopmentConfig,
    'script': ScriptConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': DevelopmentConfig
}


def get_config(config_name=None):
    """
    Get configuration class based on environment.

    Args:
        config_name (str): Configuration name ('development', 'testing', 'production')

    Returns:
        Config: Configuration class
    """
    if config_name is None:
        config_name = os.environ.get('FRATTINI_ENV', 'development')

    return config.get(config_name, DevelopmentConfig)


def get_script_config():
    """
    Get configuration for command-line scripts.

    Returns:
        Config: ScriptConfig class (quiet logging, same database as development)
    """
    return ScriptConfig


class CatalogConfig:
    """Builtin group names and the default sweep catalog."""

    BUILTIN_PATTERN = re.compile(r'^(?:([SACD])(\d+)|(Q8))$')

    DEFAULT_CATALOG = (
        ['S2', 'S3', 'S4', 'A3', 'A4']
        + [f'C{n}' for n in range(1, 25)]
        + [f'D{n}' for n in range(3, 13)]
        + ['Q8', 'C2xC2xC2', 'S3xC2', 'A4xC2']
    )

    @classmethod
    def validate_name(cls, name):
        """
        Check whether a name denotes a builtin group or a product of builtins.

        Args:
            name (str): e.g. 'S4', 'Q8', 'S3xC2'

        Returns:
            bool: True if every 'x'-separated factor is a builtin name
        """
        factors = name.split('x')
        return all(cls.BUILTIN_PATTERN.match(f) for f in factors)


__all__ = ['Config', 'DevelopmentConfig', 'ScriptConfig', 'TestingConfig', 'ProductionConfig',
           'CatalogConfig', 'config', 'get_config', 'get_script_config']
