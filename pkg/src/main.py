from src.application.app_bootstrap import run_application

if __name__ == "__main__":
    run_application()
