import sys

from dotenv import load_dotenv

# 環境変数を読み込む
load_dotenv()

if __name__ == "__main__":
    from nilquiver.main import main

    sys.exit(main())
