"""Configuration manager for weylpoly."""

import logging
import os
from pathlib import Path

from weylpoly.domain.config import Config
from weylpoly.domain.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

class ConfigManager:
    """Writes the user configuration file."""

    def __init__(self, config: Config, force: bool = False):
        """Initialize configuration manager.

        Args:
            config: Configuration to apply
            force: Whether to force overwrite existing config
        """
        self.config = config
        self.force = force

    def apply_config(self) -> bool:
        """Write the configuration unless an identical one is already stored.

        Returns:
            True when the file was written

        Raises:
            ConfigurationError: If a different configuration exists and force is not set
        """
        Path(self.config.get_config_dir()).mkdir(parents=True, exist_ok=True)

        write_config = True
        if os.path.exists(self.config.config_path):
            write_config = False
            with open(self.config.config_path) as f:
                existing_config = Config.from_yaml(f)
            if existing_config != self.config and self.force:
                write_config = True
            elif existing_config != self.config and not self.force:
                raise ConfigurationError(
                    f"Configuration mismatch with {self.config.config_path}. Use --force to overwrite it."
                )
        if write_config:
            self.config.save()
            os.chmod(self.config.config_path, 0o600)
            logger.info("Wrote %s", self.config.config_path)
        else:
            logger.info("Configuration %s is up to date", self.config.config_path)
        return write_config
