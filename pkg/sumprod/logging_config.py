import logging
from typing import Optional

import opentelemetry.trace

# Get a tracer for the package (spans are no-ops unless an exporter is configured)
tracer = opentelemetry.trace.get_tracer("sumprod")

# Configure the logger
logger = logging.getLogger("sumprod")

# Quiet by default; the CLI raises or lowers this from --log-level
logger.setLevel(logging.WARNING)

if not logger.handlers:
    # Console handler on stderr so stdout stays reserved for results
    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.DEBUG)

    formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    console_handler.setFormatter(formatter)

    logger.addHandler(console_handler)


def configure_logging(level: str = "WARNING", monitor_connection_string: Optional[str] = None) -> None:
    """
    Apply the log level and, when a connection string is given, export
    telemetry to Azure Monitor through OpenTelemetry.
    """
    logger.setLevel(level.upper())

    if monitor_connection_string:
        try:
            from azure.monitor.opentelemetry import configure_azure_monitor

            configure_azure_monitor(connection_string=monitor_connection_string)
            logger.info("Azure Monitor OpenTelemetry configured successfully")
        except Exception as e:
            logger.error(f"Error configuring Azure Monitor: {str(e)}")


# Helper function to create child loggers
def get_child_logger(name):
    """Get a child logger with the given name."""
    return logger.getChild(name)
